#include "hypcheck/family.hpp"

#include <algorithm>
#include <numeric>

#include "hypcheck/error.hpp"
#include "hypcheck/matrix.hpp"

namespace hypcheck {

namespace {

constexpr unsigned long kSampleBound = 1000;

}  // namespace

FamilyShape::FamilyShape(unsigned n, unsigned d) : n_(n), d_(d) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "family needs n >= 1");
  if (d < 4) throw Error(ErrorCode::kInvalidArgument, "family needs d >= 4");
  jd_ = gen_jd(n, d);
}

ShapePtr make_shape(unsigned n, unsigned d) { return std::make_shared<const FamilyShape>(n, d); }

DeformationPoint::DeformationPoint(ShapePtr shape)
    : shape_(std::move(shape)), t_(shape_->size()) {}

DeformationPoint::DeformationPoint(ShapePtr shape, Vector t) : shape_(std::move(shape)), t_(std::move(t)) {
  if (t_.size() != shape_->size()) {
    throw Error(ErrorCode::kDimensionMismatch, "deformation vector does not match |J_d|");
  }
}

Rational DeformationPoint::coefficient(const Monomial& f) const {
  if (!shape_->jd().contains(f)) return 0;
  return t_[shape_->jd().index_of(f)];
}

void DeformationPoint::set(const Monomial& f, const Rational& value) {
  t_[shape_->jd().index_of(f)] = value;
}

nlohmann::ordered_json to_json(const DeformationPoint& b) {
  nlohmann::ordered_json t = nlohmann::ordered_json::object();
  const MonomialSet& jd = b.shape().jd();
  for (std::size_t k = 0; k < jd.size(); ++k) {
    if (b.t()[k] != 0) t[format_monomial(jd[k])] = format_rational(b.t()[k]);
  }
  nlohmann::ordered_json out;
  out["n"] = b.shape().n();
  out["d"] = b.shape().d();
  out["t"] = std::move(t);
  return out;
}

DeformationPoint deformation_from_json(const nlohmann::json& j) {
  try {
    const auto n = j.at("n").get<unsigned>();
    const auto d = j.at("d").get<unsigned>();
    DeformationPoint b(make_shape(n, d));
    if (j.contains("t")) {
      for (const auto& [key, value] : j.at("t").items()) {
        const HomogPoly m = parse_poly(key, n + 2, d);
        if (m.terms().size() != 1 || m.terms().begin()->second != 1) {
          throw Error(ErrorCode::kParse, "deformation key '" + key + "' is not a monomial");
        }
        b.set(m.terms().begin()->first, parse_rational(value.get<std::string>()));
      }
    }
    return b;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed deformation point: ") + e.what());
  }
}

HomogPoly fermat(unsigned n, unsigned d) {
  HomogPoly f(n + 2, d);
  for (std::size_t i = 0; i < n + 2; ++i) {
    std::vector<unsigned> e(n + 2, 0);
    e[i] = d;
    f.add_term(Monomial(std::move(e)), 1);
  }
  return f;
}

HomogPoly f_poly(const DeformationPoint& b) {
  HomogPoly f = fermat(b.shape().n(), b.shape().d());
  const MonomialSet& jd = b.shape().jd();
  for (std::size_t k = 0; k < jd.size(); ++k) f.add_term(jd[k], b.t()[k]);
  return f;
}

MixedTangentSection::MixedTangentSection(EulerSection p_part, std::vector<HomogPoly> b_part)
    : p_part_(std::move(p_part)), b_part_(std::move(b_part)) {
  if (p_part_.degree() == 0 && !b_part_.empty()) {
    throw Error(ErrorCode::kDegreeMismatch, "base directions need p_part degree >= 1");
  }
  for (const HomogPoly& c : b_part_) {
    if (c.nvars() != p_part_.nvars() || c.degree() + 1 != p_part_.degree()) {
      throw Error(ErrorCode::kDegreeMismatch,
                  "base coefficients must have degree one less than the field part");
    }
  }
}

MixedTangentSection MixedTangentSection::from_p(const EulerSection& p, std::size_t jd_size) {
  if (p.degree() == 0) return MixedTangentSection(p, {});
  return MixedTangentSection(p, std::vector<HomogPoly>(jd_size, HomogPoly(p.nvars(), p.degree() - 1)));
}

MixedTangentSection MixedTangentSection::from_b(std::vector<HomogPoly> b_part, std::size_t nvars,
                                                unsigned degree) {
  return MixedTangentSection(EulerSection(nvars, degree), std::move(b_part));
}

std::string format_mixed(const MixedTangentSection& s, const FamilyShape& shape) {
  std::string out = format_section(s.p_part());
  for (std::size_t k = 0; k < s.b_part().size(); ++k) {
    if (s.b_part()[k].is_zero()) continue;
    out += " + (" + format_poly(s.b_part()[k]) + ")*d/dt[" + format_monomial(shape.jd()[k]) + "]";
  }
  return out;
}

HomogPoly eta(const DeformationPoint& b, const EulerSection& p) {
  return p.contract(f_poly(b));
}

HomogPoly eta(const DeformationPoint& b, const MixedTangentSection& s) {
  HomogPoly out = eta(b, s.p_part());
  if (s.b_part().empty()) return out;
  if (s.b_part().size() != b.shape().size()) {
    throw Error(ErrorCode::kDimensionMismatch, "base part does not match |J_d|");
  }
  const MonomialSet& jd = b.shape().jd();
  for (std::size_t k = 0; k < jd.size(); ++k) {
    if (s.b_part()[k].is_zero()) continue;
    out += s.b_part()[k] * HomogPoly::monomial(jd[k]);
  }
  return out;
}

Rational c_coeff(const DeformationPoint& b, std::size_t i, std::size_t j, std::size_t k) {
  const std::size_t nvars = b.shape().nvars();
  if (i >= nvars || j >= nvars || k >= nvars) {
    throw Error(ErrorCode::kInvalidArgument, "c_ijk index out of range");
  }
  if (i == j || i == k) throw Error(ErrorCode::kInvalidArgument, "c_ijk needs i != j and i != k");
  std::vector<unsigned> e(nvars, 0);
  e[i] = b.shape().d() - 2;
  ++e[j];
  ++e[k];
  const Rational t = b.coefficient(Monomial(std::move(e)));
  const Rational factor = j == k ? Rational(2) : Rational(1);
  return factor * t / b.shape().d();
}

std::vector<OmegaEntry> omega_basis(const DeformationPoint& b) {
  const std::size_t nvars = b.shape().nvars();
  std::vector<OmegaEntry> out;
  for (std::size_t k = 0; k < nvars; ++k) {
    for (std::size_t i = 0; i < nvars; ++i) {
      if (i == k) continue;
      for (std::size_t j = i; j < nvars; ++j) {
        if (j == k) continue;
        const HomogPoly xij = HomogPoly::variable(nvars, i) * HomogPoly::variable(nvars, j);
        EulerSection w = EulerSection::field(xij, k);
        if (i == j) {
          for (std::size_t l = 0; l < nvars; ++l) {
            if (l == i) continue;
            const Rational c = c_coeff(b, i, l, k);
            if (c == 0) continue;
            w[i] -= (HomogPoly::variable(nvars, i) * HomogPoly::variable(nvars, l)) * c;
          }
        }
        out.push_back({i, j, k, std::move(w)});
      }
    }
  }
  return out;
}

WedgeSum koszul_eta_m(const DeformationPoint& b, const std::vector<MixedTangentSection>& factors) {
  if (factors.empty()) throw Error(ErrorCode::kInvalidArgument, "eta_m needs at least one factor");
  const FamilyShape& shape = b.shape();
  WedgeSum out;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    HomogPoly coeff = eta(b, factors[k]);
    if (coeff.is_zero()) continue;
    if (k % 2 == 1) coeff *= -1;

    // Canonical order of the remaining factors; the sign of the sorting
    // permutation is the parity of its inversions.
    std::vector<std::pair<std::string, std::size_t>> keyed;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i != k) keyed.emplace_back(format_mixed(factors[i], shape), i);
    }
    std::size_t inversions = 0;
    bool repeated = false;
    for (std::size_t a = 0; a < keyed.size(); ++a) {
      for (std::size_t c = a + 1; c < keyed.size(); ++c) {
        if (keyed[a].first > keyed[c].first) ++inversions;
        if (keyed[a].first == keyed[c].first) repeated = true;
      }
    }
    if (repeated) continue;
    std::sort(keyed.begin(), keyed.end());
    if (inversions % 2 == 1) coeff *= -1;

    std::vector<MixedTangentSection> wedge;
    for (const auto& [key, i] : keyed) wedge.push_back(factors[i]);

    auto same = std::find_if(out.begin(), out.end(), [&](const WedgeTerm& t) { return t.factors == wedge; });
    if (same == out.end()) {
      out.push_back({std::move(coeff), std::move(wedge)});
    } else {
      same->coefficient += coeff;
      if (same->coefficient.is_zero()) out.erase(same);
    }
  }
  return out;
}

DeformationPoint sample_b_constrained(const ShapePtr& shape, const std::vector<Vector>& rows,
                                      const Vector& rhs, Rng& rng) {
  const std::size_t n = shape->size();
  if (rows.size() != rhs.size()) throw Error(ErrorCode::kDimensionMismatch, "constraint count");

  // Draw every coordinate first so the stream consumption does not depend on
  // the pivot pattern, then overwrite the pivot coordinates.
  Vector t(n);
  for (Rational& v : t) v = sample_rational(rng, kSampleBound);
  if (rows.empty()) return DeformationPoint(shape, std::move(t));

  ExactMatrix aug(rows.size(), n + 1);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != n) throw Error(ErrorCode::kDimensionMismatch, "constraint row length");
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = rows[r][c];
    aug(r, n) = rhs[r];
  }
  const RowEchelon ech = reduced_row_echelon(aug);
  if (!ech.pivots.empty() && ech.pivots.back() == n) {
    throw Error(ErrorCode::kInfeasible, "no deformation point satisfies the constraints");
  }
  std::vector<bool> is_pivot(n, false);
  for (std::size_t p : ech.pivots) is_pivot[p] = true;
  for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
    Rational value = ech.form(r, n);
    for (std::size_t c = 0; c < n; ++c) {
      if (!is_pivot[c] && ech.form(r, c) != 0) value -= ech.form(r, c) * t[c];
    }
    t[ech.pivots[r]] = value;
  }
  return DeformationPoint(shape, std::move(t));
}

std::pair<Vector, Rational> vanishing_constraint(const FamilyShape& shape, const ProjPoint& p) {
  if (p.size() != shape.nvars()) throw Error(ErrorCode::kDimensionMismatch, "point size");
  Vector row(shape.size());
  for (std::size_t k = 0; k < shape.size(); ++k) row[k] = HomogPoly::monomial(shape.jd()[k]).evaluate(p.coords());
  return {std::move(row), -fermat(shape.n(), shape.d()).evaluate(p.coords())};
}

DeformationPoint sample_b_through(const ShapePtr& shape, const std::vector<ProjPoint>& points,
                                  Rng& rng) {
  std::vector<Vector> rows;
  Vector rhs;
  for (const ProjPoint& p : points) {
    auto [row, value] = vanishing_constraint(*shape, p);
    rows.push_back(std::move(row));
    rhs.push_back(std::move(value));
  }
  return sample_b_constrained(shape, rows, rhs, rng);
}

DeformationPoint sample_b(const ShapePtr& shape, Rng& rng) { return sample_b_through(shape, {}, rng); }

}  // namespace hypcheck
