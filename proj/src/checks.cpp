#include <algorithm>

#include "hypcheck/error.hpp"
#include "hypcheck/verifiers.hpp"

namespace hypcheck {

namespace {

using nlohmann::ordered_json;

constexpr std::uint32_t kLargePrime = 2147483647;

// v scaled by the lcm of its denominators.
Vector integral(Vector v) {
  mpz_class l = 1;
  for (const Rational& c : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  for (Rational& c : v) c *= l;
  return v;
}

// Coordinates of l * g for integral l spanning `forms` and g in `monomials`.
std::vector<Vector> integral_products(const Subspace& forms, const MonomialSet& monomials,
                                      const MonomialSet& target) {
  std::vector<Vector> out;
  for (std::size_t k = 0; k < forms.dim(); ++k) {
    const HomogPoly l = linear_form(integral(forms.basis_vector(k)));
    for (const Monomial& g : monomials) out.push_back((l * HomogPoly::monomial(g)).coordinates(target));
  }
  return out;
}

// Exact rank of integral rows. The rank mod a prime is a lower bound, so
// hitting `expected` there settles it without rational elimination.
std::size_t rank_of_rows(const std::vector<Vector>& rows, std::size_t cols, std::size_t expected) {
  const ExactMatrix m = ExactMatrix::from_rows(rows, cols);
  const std::size_t r = modular_rank(m, kLargePrime);
  return r == expected ? r : rank(m);
}

EulerSection section_from_coordinates(const Vector& v, const MonomialSet& basis, std::size_t nvars,
                                      unsigned degree) {
  std::vector<HomogPoly> comps;
  for (std::size_t c = 0; c < nvars; ++c) {
    const std::span<const Rational> block(v.data() + c * basis.size(), basis.size());
    comps.push_back(HomogPoly::from_coordinates(basis, block, nvars, degree));
  }
  return EulerSection(std::move(comps));
}

// Some basis vector of `bigger` outside `smaller`, if any.
std::optional<Vector> outside(const Subspace& bigger, const Subspace& smaller) {
  for (const Vector& v : bigger.basis_vectors()) {
    if (!smaller.contains(v)) return v;
  }
  return std::nullopt;
}

// Span equality witness: a vector in one side and not the other.
ordered_json mismatch_witness(const Subspace& lhs, const Subspace& rhs,
                              const std::function<std::string(const Vector&)>& render) {
  ordered_json w;
  if (auto v = outside(lhs, rhs)) {
    w["in_lhs_not_rhs"] = render(*v);
  } else if (auto u = outside(rhs, lhs)) {
    w["in_rhs_not_lhs"] = render(*u);
  }
  w["lhs_dim"] = lhs.dim();
  w["rhs_dim"] = rhs.dim();
  return w;
}

std::function<std::string(const Vector&)> poly_renderer(const MonomialSet& basis, std::size_t nvars,
                                                        unsigned degree) {
  return [&basis, nvars, degree](const Vector& v) {
    return format_poly(HomogPoly::from_coordinates(basis, v, nvars, degree));
  };
}

std::string render_restricted(const Vector& v, std::size_t nvars) {
  // Components are binary forms of degree v.size() / nvars - 1.
  const std::size_t width = v.size() / nvars;
  std::string out;
  for (std::size_t c = 0; c < nvars; ++c) {
    const BinaryForm f(Vector(v.begin() + c * width, v.begin() + (c + 1) * width));
    if (f.is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + format_binary(f) + ")*d/dx" + std::to_string(c);
  }
  return out.empty() ? "0" : out;
}

HomogPoly xx(std::size_t nvars, std::size_t i, std::size_t j) {
  return HomogPoly::variable(nvars, i) * HomogPoly::variable(nvars, j);
}

Vector restricted(const EulerSection& s, const Line& line) { return flatten(restrict_section(s, line)); }

// alpha restricted to the line, times s and times t.
std::vector<Vector> alpha_times_linear(const Line& line) {
  std::vector<BinaryForm> comps;
  for (std::size_t i = 0; i < line.nvars(); ++i) comps.push_back(line.coordinate(i));
  std::vector<Vector> out;
  for (unsigned power = 0; power <= 1; ++power) {
    std::vector<BinaryForm> scaled;
    for (const BinaryForm& c : comps) scaled.push_back(c * BinaryForm::monomial(1, power));
    out.push_back(flatten(scaled));
  }
  return out;
}

}  // namespace

ordered_json vector_json(const Vector& v) {
  ordered_json out = ordered_json::array();
  for (const Rational& c : v) out.push_back(format_rational(c));
  return out;
}

ordered_json scheme_json(const LengthTwoScheme& z) {
  const SchemeClass cls = classify(z);
  ordered_json out;
  out["p1"] = format_point(z.p1());
  out["p2"] = format_point(z.p2());
  out["class"] = std::string(to_string(cls.tag));
  if (cls.tag != SchemeTag::kGeneric) out["a"] = cls.a;
  out["vanishing"] = cls.vanishing;
  return out;
}

// ---------------------------------------------------------------------------

TrialOutcome check_w_basis(const DeformationPoint& b) {
  const FamilyShape& shape = b.shape();
  const unsigned n = shape.n();
  const unsigned d = shape.d();
  const std::size_t nvars = shape.nvars();
  const HomogPoly F = f_poly(b);
  const MonomialSet quad = all_monomials(nvars, 2);
  const MonomialSet j_next = gen_jd(n, d + 1);

  // Coordinates of a degree-(d+1) form outside Span J_{d+1}: only the
  // monomials x_i^{d+1} and x_i^d x_j.
  std::vector<Monomial> rest;
  for (const Monomial& m : all_monomials(nvars, d + 1)) {
    if (!j_next.contains(m)) rest.push_back(m);
  }
  const MonomialSet rest_set(rest);
  const auto project = [&rest_set](const HomogPoly& p) {
    Vector v(rest_set.size());
    for (const auto& [m, c] : p.terms()) {
      if (rest_set.contains(m)) v[rest_set.index_of(m)] = c;
    }
    return v;
  };

  std::vector<HomogPoly> dF;
  for (std::size_t i = 0; i < nvars; ++i) dF.push_back(partial_derivative(F, i));

  // Columns: eta of every m * d/dx_c, then F * x_i.
  std::vector<Vector> columns;
  for (std::size_t c = 0; c < nvars; ++c) {
    for (const Monomial& m : quad) columns.push_back(project(HomogPoly::monomial(m) * dF[c]));
  }
  const std::size_t sections = columns.size();
  for (std::size_t i = 0; i < nvars; ++i) columns.push_back(project(F * HomogPoly::variable(nvars, i)));
  const Subspace kernel = kernel_basis(ExactMatrix::from_columns(columns, rest_set.size()));
  std::vector<Vector> preimage_gens;
  for (const Vector& v : kernel.basis_vectors()) preimage_gens.emplace_back(v.begin(), v.begin() + sections);
  const Subspace preimage = Subspace::span(sections, preimage_gens);

  const std::vector<OmegaEntry> omegas = omega_basis(b);
  TrialOutcome out;
  std::vector<Vector> omega_vecs;
  for (const OmegaEntry& w : omegas) {
    omega_vecs.push_back(w.section.coordinates(quad));
    if (out.holds && !is_zero(project(eta(b, w.section)))) {
      out.holds = false;
      out.witness["reason"] = "eta(omega) leaves Span J_{d+1}";
      out.witness["omega"] = format_section(w.section);
      out.witness["eta"] = format_poly(eta(b, w.section));
    }
  }
  const Subspace omega_span = Subspace::span(sections, omega_vecs);

  std::vector<Vector> with_alpha = omega_vecs;
  const EulerSection alpha = euler_alpha(n);
  for (std::size_t i = 0; i < nvars; ++i) {
    with_alpha.push_back((alpha * HomogPoly::variable(nvars, i)).coordinates(quad));
  }
  const Subspace expected = Subspace::span(sections, with_alpha);

  const std::size_t count = omegas.size();
  out.dims = {{"basis", static_cast<long long>(count)},
              {"rank", static_cast<long long>(omega_span.dim())},
              {"kernel_total", static_cast<long long>(preimage.dim())}};
  if (!out.holds) return out;
  if (omega_span.dim() != count) {
    out.holds = false;
    out.witness["reason"] = "omega sections are dependent";
    out.witness["rank"] = omega_span.dim();
  } else if (preimage.dim() != count + nvars || !(preimage == expected)) {
    out.holds = false;
    out.witness = mismatch_witness(preimage, expected, [&](const Vector& v) {
      return format_section(section_from_coordinates(v, quad, nvars, 2));
    });
    out.witness["reason"] = "kernel differs from omega span plus alpha * H0(O(1))";
  }
  return out;
}

TrialOutcome check_kernel_generic(const FamilyShape& shape, const LengthTwoScheme& z) {
  TrialOutcome out;
  out.info["scheme"] = scheme_json(z);
  if (classify(z).tag != SchemeTag::kGeneric) {
    out.skipped = true;
    return out;
  }
  const unsigned n = shape.n();
  const unsigned d = shape.d();
  const MonomialSet& jd = shape.jd();

  std::vector<Vector> columns;
  for (const Monomial& f : jd) columns.push_back(restrict_poly(HomogPoly::monomial(f), z.line()).coeffs());
  const ExactMatrix xi = ExactMatrix::from_columns(columns, d + 1);
  const std::size_t image = rank(xi);
  const std::size_t kernel_dim = jd.size() - image;

  // Generators l * g with integral l, so their rank mod a prime bounds the
  // exact rank from below.
  const std::vector<Vector> generators = integral_products(iz_linear(z), gen_jd(n, d - 1), jd);
  bool inside = true;
  for (const Vector& g : generators) {
    if (!is_zero(xi * g)) {
      inside = false;
      break;
    }
  }
  std::size_t lhs_dim = 0;
  if (inside) lhs_dim = rank_of_rows(generators, jd.size(), kernel_dim);

  out.dims = {{"jd", static_cast<long long>(jd.size())},
              {"lhs", static_cast<long long>(inside ? lhs_dim : Subspace::span(jd.size(), generators).dim())},
              {"rhs", static_cast<long long>(kernel_dim)},
              {"quotient", static_cast<long long>(jd.size() - kernel_dim)},
              {"image", static_cast<long long>(image)}};
  if (!inside || lhs_dim != kernel_dim) {
    const auto render = poly_renderer(jd, shape.nvars(), d);
    out.holds = false;
    out.witness = mismatch_witness(Subspace::span(jd.size(), generators), kernel_basis(xi), render);
    out.witness["reason"] = inside ? "kernel larger than I_Z(1) * J_{d-1}" : "I_Z(1) * J_{d-1} not inside the kernel";
  } else if (image != d + 1) {
    out.holds = false;
    out.witness["reason"] = "restriction of Span J_d is not onto the degree-d forms on the line";
    out.witness["image"] = image;
  }
  return out;
}

TrialOutcome check_kernel_special(const FamilyShape& shape, const LengthTwoScheme& z) {
  TrialOutcome out;
  out.info["scheme"] = scheme_json(z);
  const SchemeClass cls = classify(z);
  std::vector<std::size_t> identity(z.nvars());
  for (std::size_t i = 0; i < identity.size(); ++i) identity[i] = i;
  if (cls.tag != SchemeTag::kSpecial || cls.normalization != identity) {
    out.skipped = true;
    return out;
  }
  const unsigned n = shape.n();
  const unsigned d = shape.d();
  const std::size_t nvars = shape.nvars();
  const MonomialSet& jd = shape.jd();

  std::vector<Vector> columns;
  for (const Monomial& f : jd) columns.push_back(restrict_poly(HomogPoly::monomial(f), z.line()).coeffs());
  const ExactMatrix xi = ExactMatrix::from_columns(columns, d + 1);
  const std::size_t lhs_dim = jd.size() - rank(xi);

  const Subspace iz = iz_linear(z);
  std::vector<Vector> gens = integral_products(iz, gen_jd(n, d - 1), jd);

  // On Z every x_j with j >= 1 is a multiple of x_1.
  const ProjPoint& p = z.p1()[1] != 0 ? z.p1() : z.p2();
  std::size_t extra = 0;
  std::vector<unsigned> e0(nvars, 0);
  e0[0] = d - 2;
  const HomogPoly x0_power = HomogPoly::monomial(Monomial(e0));
  for (std::size_t j = 2; j < nvars; ++j) {
    Vector l(nvars);
    l[j] = 1;
    l[1] = -p[j] / p[1];
    if (!iz.contains(l)) {
      out.holds = false;
      out.witness["reason"] = "x_j - c_j x_1 does not vanish on Z";
      out.witness["j"] = j;
      return out;
    }
    const HomogPoly lin = linear_form(integral(l));
    for (std::size_t i = 1; i < nvars; ++i) {
      gens.push_back((x0_power * HomogPoly::variable(nvars, i) * lin).coordinates(jd));
      ++extra;
    }
  }
  const bool inside = std::all_of(gens.begin(), gens.end(), [&](const Vector& g) { return is_zero(xi * g); });
  const std::size_t rhs_dim = rank_of_rows(gens, jd.size(), lhs_dim);
  out.dims = {{"jd", static_cast<long long>(jd.size())},
              {"lhs", static_cast<long long>(lhs_dim)},
              {"rhs", static_cast<long long>(rhs_dim)},
              {"generators", static_cast<long long>(gens.size())},
              {"extra_generators", static_cast<long long>(extra)},
              {"a", static_cast<long long>(cls.a)}};
  if (!inside || rhs_dim != lhs_dim) {
    out.holds = false;
    out.witness = mismatch_witness(kernel_basis(xi), Subspace::span(jd.size(), gens), poly_renderer(jd, nvars, d));
    out.witness["reason"] = "kernel on Span J_d differs from the listed generators";
  }
  return out;
}

TrialOutcome check_point_ideal(unsigned n, unsigned d, const ProjPoint& p, const ProjPoint& q) {
  if (p.is_coordinate_point()) {
    throw Error(ErrorCode::kCoordinatePoint, "the point is a coordinate point");
  }
  const std::size_t nvars = n + 2;
  const MonomialSet j_next = gen_jd(n, d + 1);
  const MonomialSet jd = gen_jd(n, d);

  Vector row;
  for (const Monomial& f : j_next) row.push_back(HomogPoly::monomial(f).evaluate(p.coords()));
  const std::size_t lhs_dim = j_next.size() - (is_zero(row) ? 0 : 1);

  const LengthTwoScheme z(p, q);
  Vector s(nvars);
  bool found = false;
  for (std::size_t i = 0; i < nvars && !found; ++i) {
    for (std::size_t j = i + 1; j < nvars && !found; ++j) {
      if (p[i] == 0 && p[j] == 0) continue;
      if (q[i] * p[j] - q[j] * p[i] == 0) continue;
      s.assign(nvars, 0);
      s[i] = p[j];
      s[j] = -p[i];
      found = true;
    }
  }
  const std::vector<Vector> rhs = integral_products(ip_linear(p), jd, j_next);
  std::vector<Vector> rhs_z = integral_products(iz_linear(z), jd, j_next);
  for (Vector& v : integral_products(Subspace::span(nvars, {s}), jd, j_next)) rhs_z.push_back(std::move(v));

  // Each side lies in the vanishing hyperplane exactly when every generator
  // is killed by evaluation at p; equality then reduces to a rank count.
  const auto vanish = [&](const std::vector<Vector>& gens) {
    return std::all_of(gens.begin(), gens.end(), [&](const Vector& g) {
      Rational total = 0;
      for (std::size_t k = 0; k < g.size(); ++k) total += row[k] * g[k];
      return total == 0;
    });
  };
  const bool rhs_inside = vanish(rhs);
  const bool rhs_z_inside = vanish(rhs_z);
  const std::size_t rhs_dim = rank_of_rows(rhs, j_next.size(), lhs_dim);
  const std::size_t rhs_z_dim = rank_of_rows(rhs_z, j_next.size(), lhs_dim);

  TrialOutcome out;
  out.info["p"] = format_point(p);
  out.info["q"] = format_point(q);
  out.info["s"] = format_poly(linear_form(s));
  out.dims = {{"j_next", static_cast<long long>(j_next.size())},
              {"lhs", static_cast<long long>(lhs_dim)},
              {"rhs", static_cast<long long>(rhs_dim)},
              {"rhs_z", static_cast<long long>(rhs_z_dim)},
              {"codim", static_cast<long long>(j_next.size() - lhs_dim)}};
  const auto render = poly_renderer(j_next, nvars, d + 1);
  const auto lhs = [&] { return kernel_basis(ExactMatrix::from_rows({row}, j_next.size())); };
  if (lhs_dim + 1 != j_next.size()) {
    out.holds = false;
    out.witness["reason"] = "vanishing at p is not one condition on Span J_{d+1}";
    out.witness["lhs_dim"] = lhs_dim;
  } else if (!rhs_inside || rhs_dim != lhs_dim) {
    out.holds = false;
    out.witness = mismatch_witness(lhs(), Subspace::span(j_next.size(), rhs), render);
    out.witness["reason"] = "I_p(1) * J_d differs from the vanishing subspace";
  } else if (!rhs_z_inside || rhs_z_dim != lhs_dim) {
    out.holds = false;
    out.witness = mismatch_witness(lhs(), Subspace::span(j_next.size(), rhs_z), render);
    out.witness["reason"] = "I_Z(1) * J_d + s * J_d differs from the vanishing subspace";
  }
  return out;
}

std::vector<Vector> restricted_w(const DeformationPoint& b, const Line& line) {
  std::vector<Vector> out;
  for (const OmegaEntry& w : omega_basis(b)) out.push_back(restricted(w.section, line));
  return out;
}

TrialOutcome check_xi_special(const DeformationPoint& b, const LengthTwoScheme& z) {
  const std::size_t nvars = b.shape().nvars();
  const std::size_t ambient = 3 * nvars;
  const Line& line = z.line();
  const Subspace w = Subspace::span(ambient, restricted_w(b, line));

  TrialOutcome out;
  out.info["special"] = scheme_json(z);
  std::size_t listed = 0;
  const auto require = [&](const EulerSection& field) {
    ++listed;
    const Vector v = restricted(field, line);
    if (out.holds && !w.contains(v)) {
      out.holds = false;
      out.witness["reason"] = "listed field missing from the restricted span";
      out.witness["field"] = format_section(field);
    }
  };
  for (std::size_t i = 0; i < nvars; ++i) require(EulerSection::field(xx(nvars, 1, 1), i));
  for (std::size_t j = 1; j < nvars; ++j) require(EulerSection::field(xx(nvars, 0, 1), j));

  const Subspace alpha_part = Subspace::span(ambient, alpha_times_linear(line));
  const std::size_t with_alpha = subspace_sum(w, alpha_part).dim();
  const std::size_t modulo_alpha = with_alpha - alpha_part.dim();
  const std::size_t target = ambient - 2;
  out.dims = {{"special_w_rank", static_cast<long long>(w.dim())},
              {"special_listed", static_cast<long long>(listed)},
              {"special_rank_mod_alpha", static_cast<long long>(modulo_alpha)},
              {"special_target", static_cast<long long>(target)}};
  if (out.holds && modulo_alpha != target) {
    out.holds = false;
    out.witness["reason"] = "restricted span misses part of the tangent sections modulo alpha";
    out.witness["rank_mod_alpha"] = modulo_alpha;
  }
  return out;
}

TrialOutcome check_xi_very_special(const DeformationPoint& b, const LengthTwoScheme& z) {
  const std::size_t nvars = b.shape().nvars();
  const std::size_t ambient = 3 * nvars;
  const Line& line = z.line();
  const Subspace w = Subspace::span(ambient, restricted_w(b, line));

  std::vector<Vector> gens;
  for (std::size_t k = 2; k < nvars; ++k) gens.push_back(restricted(EulerSection::field(xx(nvars, 0, 1), k), line));
  for (std::size_t k = 1; k < nvars; ++k) {
    EulerSection f = EulerSection::field(xx(nvars, 0, 0), k);
    f[0] -= xx(nvars, 0, 1) * c_coeff(b, 0, 1, k);
    gens.push_back(restricted(f, line));
  }
  for (std::size_t k = 0; k < nvars; ++k) {
    if (k == 1) continue;
    EulerSection f = EulerSection::field(xx(nvars, 1, 1), k);
    f[1] -= xx(nvars, 0, 1) * c_coeff(b, 1, 0, k);
    gens.push_back(restricted(f, line));
  }
  const Subspace listed = Subspace::span(ambient, gens);

  TrialOutcome out;
  out.info["very_special"] = scheme_json(z);
  out.dims = {{"very_special_w_rank", static_cast<long long>(w.dim())},
              {"very_special_listed", static_cast<long long>(listed.dim())},
              {"very_special_target", static_cast<long long>(3 * (nvars - 2) + 2)}};
  if (listed.dim() != 3 * (nvars - 2) + 2) {
    out.holds = false;
    out.witness["reason"] = "listed very special generators are dependent";
    out.witness["listed_dim"] = listed.dim();
  } else if (!(w == listed)) {
    out.holds = false;
    out.witness = mismatch_witness(w, listed, [nvars](const Vector& v) { return render_restricted(v, nvars); });
    out.witness["reason"] = "restricted span differs from the listed very special span";
  }
  return out;
}

TrialOutcome check_xi_generic(const DeformationPoint& b, const LengthTwoScheme& z) {
  const std::size_t nvars = b.shape().nvars();
  const Subspace w = Subspace::span(3 * nvars, restricted_w(b, z.line()));
  TrialOutcome out;
  out.info["scheme"] = scheme_json(z);
  out.dims = {{"rank", static_cast<long long>(w.dim())}, {"target", static_cast<long long>(3 * nvars)}};
  if (w.dim() != 3 * nvars) {
    out.holds = false;
    out.witness["reason"] = "restricted span is not all of H0(line, E(1))";
    out.witness["scheme"] = scheme_json(z);
    out.witness["rank"] = w.dim();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reduced systems

Rational SystemCoefficients::operator()(int i, int j, int k) const {
  const auto it = c.find({i, std::min(j, k), std::max(j, k)});
  if (it == c.end()) throw Error(ErrorCode::kInvalidArgument, "missing system coefficient");
  return it->second;
}

SystemCoefficients sample_system_coefficients(Rng& rng) {
  SystemCoefficients out;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      for (int k = j; k < 4; ++k) {
        if (j == i || k == i) continue;
        out.c[{i, j, k}] = sample_rational(rng, 1000);
      }
    }
  }
  return out;
}

ExactMatrix nine_by_six_system(const SystemCoefficients& c) {
  // Unknown index for a_i x_i^2 d/dx_j.
  const auto col = [](int i, int j) -> std::size_t {
    static const std::array<std::pair<int, int>, 6> order{{{1, 0}, {2, 0}, {0, 1}, {2, 1}, {0, 2}, {1, 2}}};
    for (std::size_t k = 0; k < order.size(); ++k) {
      if (order[k] == std::make_pair(i, j)) return k;
    }
    throw Error(ErrorCode::kInvalidArgument, "no such unknown");
  };
  ExactMatrix m(9, 6);
  // c_{ij3} x_j^2 d/dx_i terms for each target i.
  m(0, col(1, 0)) = c(0, 1, 3);
  m(0, col(2, 0)) = c(0, 2, 3);
  m(1, col(0, 1)) = c(1, 0, 3);
  m(1, col(2, 1)) = c(1, 2, 3);
  m(2, col(0, 2)) = c(2, 0, 3);
  m(2, col(1, 2)) = c(2, 1, 3);
  // x_i^2 d/dx_k + sum_j c_{ijk} x_j^2 d/dx_i.
  int row = 3;
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) {
      if (k == i) continue;
      m(row, col(i, k)) = 1;
      for (int j = 0; j < 3; ++j) {
        if (j != i) m(row, col(j, i)) += c(i, j, k);
      }
      ++row;
    }
  }
  return m;
}

ExactMatrix two_by_two_minor(const SystemCoefficients& c) {
  return ExactMatrix::from_rows({{c(1, 0, 2), c(0, 1, 2)}, {c(1, 0, 3), c(0, 1, 3)}}, 2);
}

ExactMatrix two_unknown_system(const SystemCoefficients& c, const Rational& a) {
  return ExactMatrix::from_rows({{-a * c(0, 2, 2), 1}, {a * a, -a * c(2, 0, 0)}}, 2);
}

// ---------------------------------------------------------------------------
// Secant lines

SecantAnalysis secant_obstruction(const DeformationPoint& b, const LengthTwoScheme& z) {
  if (classify(z).tag != SchemeTag::kGeneric) {
    throw Error(ErrorCode::kNonGenericScheme, "secant analysis needs a generic scheme");
  }
  const HomogPoly F = f_poly(b);
  if (F.evaluate(z.p1().coords()) != 0 || F.evaluate(z.p2().coords()) != 0) {
    throw Error(ErrorCode::kInvalidArgument, "the scheme does not lie on the hypersurface");
  }
  const Line& line = z.line();
  const unsigned d = F.degree();
  SecantAnalysis out;
  out.xi_f = restrict_poly(F, line);
  if (out.xi_f.is_zero()) throw Error(ErrorCode::kLineInX, "the line lies on the hypersurface");

  const std::size_t nvars = z.nvars();
  const std::size_t dim_e = 2 * nvars;
  // Basis of H0(line, E): index 2i + e has component i equal to s (e = 0) or t (e = 1).
  const ExactMatrix ann1 = ip_linear(z.p1()).basis().transpose();
  const ExactMatrix ann2 = ip_linear(z.p2()).basis().transpose();
  ExactMatrix rho(ann1.rows() + ann2.rows(), dim_e);
  for (std::size_t r = 0; r < ann1.rows(); ++r) {
    for (std::size_t i = 0; i < nvars; ++i) rho(r, 2 * i) = ann1(r, i);
  }
  for (std::size_t r = 0; r < ann2.rows(); ++r) {
    for (std::size_t i = 0; i < nvars; ++i) rho(ann1.rows() + r, 2 * i + 1) = ann2(r, i);
  }
  const Subspace ker_rho = kernel_basis(rho);

  Vector alpha(dim_e);
  for (std::size_t i = 0; i < nvars; ++i) {
    alpha[2 * i] = z.p1()[i];
    alpha[2 * i + 1] = z.p2()[i];
  }

  std::vector<Vector> columns;
  for (std::size_t i = 0; i < nvars; ++i) {
    const BinaryForm g = restrict_poly(partial_derivative(F, i), line);
    columns.push_back((g * BinaryForm::monomial(1, 0)).coeffs());
    columns.push_back((g * BinaryForm::monomial(1, 1)).coeffs());
  }
  const ExactMatrix eta_hat = ExactMatrix::from_columns(columns, d + 1);
  const Subspace ker_eta = kernel_basis(eta_hat);

  Vector s_fs(d + 1), t_ft(d + 1);
  for (unsigned k = 0; k <= d; ++k) {
    s_fs[k] = out.xi_f[k] * (d - k);
    t_ft[k] = out.xi_f[k] * k;
  }
  const Subspace expected_image = Subspace::span(d + 1, {s_fs, t_ft});

  out.ker_rho = ker_rho.dim();
  out.ker_eta_hat = ker_eta.dim();
  out.intersection = subspace_intersect(ker_rho, ker_eta).dim();
  out.alpha_in_ker_rho = ker_rho.contains(alpha);
  out.image_matches = image(eta_hat, ker_rho) == expected_image;
  out.well_defined = ker_rho.contains(ker_eta);
  // f(y) = xi(F)(1, y) has y^k coefficient xi_f[k]; y f'(y) has k xi_f[k].
  out.pair_dependent = rank(ExactMatrix::from_rows({out.xi_f.coeffs(), t_ft}, d + 1)) < 2;
  out.monomial = std::count_if(out.xi_f.coeffs().begin(), out.xi_f.coeffs().end(),
                               [](const Rational& c) { return c != 0; }) == 1;
  out.distinct_roots = distinct_roots(out.xi_f);
  out.offset = static_cast<long long>(dim_e) - static_cast<long long>(d + 1);
  return out;
}

ordered_json to_json(const SecantAnalysis& s) {
  ordered_json out;
  out["xi_f"] = format_binary(s.xi_f);
  out["ker_rho"] = s.ker_rho;
  out["ker_eta_hat"] = s.ker_eta_hat;
  out["intersection"] = s.intersection;
  out["alpha_in_ker_rho"] = s.alpha_in_ker_rho;
  out["image_matches"] = s.image_matches;
  out["well_defined"] = s.well_defined;
  out["pair_dependent"] = s.pair_dependent;
  out["monomial"] = s.monomial;
  out["distinct_roots"] = s.distinct_roots;
  out["offset"] = s.offset;
  return out;
}

namespace {

constexpr int kMaxAttempts = 100;

ProjPoint random_point(std::size_t nvars, Rng& rng) {
  for (;;) {
    Vector v(nvars);
    for (Rational& c : v) c = sample_rational(rng, 1000);
    if (!is_zero(v)) return ProjPoint(std::move(v));
  }
}

std::optional<LengthTwoScheme> random_generic_scheme(std::size_t nvars, Rng& rng) {
  ProjPoint p1 = random_point(nvars, rng);
  ProjPoint p2 = random_point(nvars, rng);
  if (p1 == p2) return std::nullopt;
  LengthTwoScheme z(std::move(p1), std::move(p2));
  if (classify(z).tag != SchemeTag::kGeneric) return std::nullopt;
  return z;
}

}  // namespace

std::pair<DeformationPoint, LengthTwoScheme> random_secant(const ShapePtr& shape, Rng& rng) {
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    auto z = random_generic_scheme(shape->nvars(), rng);
    if (!z) continue;
    DeformationPoint b = sample_b_through(shape, {z->p1(), z->p2()}, rng);
    if (restrict_poly(f_poly(b), z->line()).is_zero()) continue;
    return {std::move(b), std::move(*z)};
  }
  throw Error(ErrorCode::kInfeasible, "could not sample a secant configuration");
}

std::pair<DeformationPoint, LengthTwoScheme> two_point_line(const ShapePtr& shape, unsigned m, Rng& rng) {
  const unsigned d = shape->d();
  if (m == 0 || m >= d) throw Error(ErrorCode::kInvalidArgument, "multiplicity must satisfy 0 < m < d");
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    auto z = random_generic_scheme(shape->nvars(), rng);
    if (!z) continue;
    std::vector<Vector> restricted_monomials;
    for (const Monomial& f : shape->jd()) {
      restricted_monomials.push_back(restrict_poly(HomogPoly::monomial(f), z->line()).coeffs());
    }
    const BinaryForm base = restrict_poly(fermat(shape->n(), d), z->line());
    std::vector<Vector> rows;
    Vector rhs;
    for (unsigned k = 0; k <= d; ++k) {
      if (k == m) continue;
      Vector row;
      for (const Vector& r : restricted_monomials) row.push_back(r[k]);
      rows.push_back(std::move(row));
      rhs.push_back(-base[k]);
    }
    std::optional<DeformationPoint> b;
    try {
      b = sample_b_constrained(shape, rows, rhs, rng);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kInfeasible) throw;
      continue;
    }
    const BinaryForm xf = restrict_poly(f_poly(*b), z->line());
    const auto nonzero = std::count_if(xf.coeffs().begin(), xf.coeffs().end(),
                                       [](const Rational& c) { return c != 0; });
    if (nonzero != 1 || xf[m] == 0) continue;
    return {std::move(*b), std::move(*z)};
  }
  throw Error(ErrorCode::kInfeasible, "could not construct a line meeting the hypersurface in two points");
}

// ---------------------------------------------------------------------------
// Incidence and tangency

long long incidence_dimension(unsigned n, unsigned d, unsigned m) {
  if (m == 0 || m >= d) throw Error(ErrorCode::kInvalidArgument, "multiplicity must satisfy 0 < m < d");
  const long long grassmannian = 2LL * n;
  return grassmannian + 2 - static_cast<long long>(d);
}

std::size_t incidence_fiber_codim(const FamilyShape& shape, const Line& line, unsigned m) {
  const unsigned d = shape.d();
  if (m == 0 || m >= d) throw Error(ErrorCode::kInvalidArgument, "multiplicity must satisfy 0 < m < d");
  std::vector<Vector> rows(d);
  for (const Monomial& f : shape.jd()) {
    const BinaryForm r = restrict_poly(HomogPoly::monomial(f), line);
    std::size_t row = 0;
    for (unsigned k = 0; k <= d; ++k) {
      if (k != m) rows[row++].push_back(r[k]);
    }
  }
  return rank(ExactMatrix::from_rows(rows, shape.size()));
}

TangencyResult tangency_deformation_dim(const HomogPoly& F, const Line& line, unsigned m) {
  const unsigned d = F.degree();
  if (m == 0 || m >= d) throw Error(ErrorCode::kInvalidArgument, "multiplicity must satisfy 0 < m < d");
  const BinaryForm xf = restrict_poly(F, line);
  for (unsigned k = 0; k <= d; ++k) {
    if ((k == m) != (xf[k] != 0)) {
      throw Error(ErrorCode::kNotInWm, "restriction is not c * s^(d-m) * t^m: " + format_binary(xf));
    }
  }

  // Normal directions: coordinate vectors completing the span of the two points.
  const std::size_t nvars = line.nvars();
  std::vector<Vector> spanning{line.p().coords(), line.q().coords()};
  std::vector<Vector> normals;
  for (std::size_t j = 0; j < nvars && spanning.size() < nvars; ++j) {
    Vector e(nvars);
    e[j] = 1;
    spanning.push_back(e);
    if (rank(ExactMatrix::from_rows(spanning, nvars)) == spanning.size()) {
      normals.push_back(std::move(e));
    } else {
      spanning.pop_back();
    }
  }

  std::vector<BinaryForm> partials;
  for (std::size_t i = 0; i < nvars; ++i) partials.push_back(restrict_poly(partial_derivative(F, i), line));

  std::vector<Vector> columns;
  for (const Vector& w : normals) {
    BinaryForm g(d - 1);
    for (std::size_t i = 0; i < nvars; ++i) {
      if (w[i] != 0) g += partials[i] * w[i];
    }
    for (unsigned power = 0; power <= 1; ++power) {
      const BinaryForm moved = g * BinaryForm::monomial(1, power);
      Vector kept;
      for (unsigned k = 0; k <= d; ++k) {
        if (k + 1 < m || k > m + 1) kept.push_back(moved[k]);
      }
      columns.push_back(std::move(kept));
    }
  }
  TangencyResult out;
  out.unknowns = columns.size();
  out.constraints = columns.empty() ? 0 : columns.front().size();
  out.dimension = out.unknowns - rank(ExactMatrix::from_columns(columns, out.constraints));
  return out;
}

HomogPoly tangency_instance(unsigned n, unsigned d, unsigned m, bool degenerate, Rng& rng) {
  const std::size_t nvars = n + 2;
  std::vector<unsigned> e(nvars, 0);
  e[0] = d - m;
  e[1] = m;
  HomogPoly F = HomogPoly::monomial(Monomial(e));
  if (degenerate) return F;
  const MonomialSet lower = all_monomials(nvars, d - 1);
  for (std::size_t k = 2; k < nvars; ++k) {
    HomogPoly g(nvars, d - 1);
    for (const Monomial& mono : lower) g.add_term(mono, sample_rational(rng, 1000));
    F += HomogPoly::variable(nvars, k) * g;
  }
  return F;
}

Line coordinate_line(unsigned n) {
  Vector e0(n + 2), e1(n + 2);
  e0[0] = 1;
  e1[1] = 1;
  return Line(ProjPoint(e0), ProjPoint(e1));
}

}  // namespace hypcheck
