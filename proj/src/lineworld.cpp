#include "hypcheck/lineworld.hpp"

#include <algorithm>
#include <optional>

#include "hypcheck/error.hpp"

namespace hypcheck {

// ---------------------------------------------------------------------------
// BinaryForm

BinaryForm::BinaryForm(Vector coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw Error(ErrorCode::kInvalidArgument, "binary form needs a coefficient");
}

BinaryForm BinaryForm::monomial(unsigned degree, unsigned t_power, const Rational& c) {
  if (t_power > degree) throw Error(ErrorCode::kInvalidArgument, "t power exceeds degree");
  BinaryForm f(degree);
  f.coeffs_[t_power] = c;
  return f;
}

BinaryForm& BinaryForm::operator+=(const BinaryForm& rhs) {
  if (degree() != rhs.degree()) throw Error(ErrorCode::kDegreeMismatch, "binary form degrees differ");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  return *this;
}

BinaryForm& BinaryForm::operator-=(const BinaryForm& rhs) {
  if (degree() != rhs.degree()) throw Error(ErrorCode::kDegreeMismatch, "binary form degrees differ");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
  return *this;
}

BinaryForm& BinaryForm::operator*=(const Rational& c) {
  for (Rational& x : coeffs_) x *= c;
  return *this;
}

BinaryForm BinaryForm::operator*(const BinaryForm& rhs) const {
  BinaryForm out(degree() + rhs.degree());
  for (std::size_t a = 0; a < coeffs_.size(); ++a) {
    if (coeffs_[a] == 0) continue;
    for (std::size_t b = 0; b < rhs.coeffs_.size(); ++b) out.coeffs_[a + b] += coeffs_[a] * rhs.coeffs_[b];
  }
  return out;
}

Rational BinaryForm::evaluate(const Rational& s, const Rational& t) const {
  Rational total = 0;
  const unsigned m = degree();
  for (unsigned k = 0; k <= m; ++k) {
    if (coeffs_[k] == 0) continue;
    Rational term = coeffs_[k];
    for (unsigned e = 0; e < m - k; ++e) term *= s;
    for (unsigned e = 0; e < k; ++e) term *= t;
    total += term;
  }
  return total;
}

unsigned BinaryForm::multiplicity_at_s_zero() const {
  unsigned count = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend() && *it == 0; ++it) ++count;
  return count;
}

unsigned BinaryForm::multiplicity_at_t_zero() const {
  unsigned count = 0;
  for (auto it = coeffs_.begin(); it != coeffs_.end() && *it == 0; ++it) ++count;
  return count;
}

std::string format_binary(const BinaryForm& f) {
  std::string out;
  const unsigned m = f.degree();
  for (unsigned k = 0; k <= m; ++k) {
    const Rational& c = f[k];
    if (c == 0) continue;
    std::string mono;
    auto factor = [&mono](const char* var, unsigned e) {
      if (e == 0) return;
      if (!mono.empty()) mono += '*';
      mono += var;
      if (e > 1) mono += '^' + std::to_string(e);
    };
    factor("s", m - k);
    factor("t", k);
    const bool negative = c < 0;
    if (negative) {
      out += '-';
    } else if (!out.empty()) {
      out += '+';
    }
    const Rational magnitude = negative ? Rational(-c) : c;
    if (mono.empty()) {
      out += magnitude.get_str();
    } else {
      if (magnitude != 1) out += magnitude.get_str() + '*';
      out += mono;
    }
  }
  return out.empty() ? "0" : out;
}

namespace {

void trim(Vector& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Remainder of a modulo b (low-to-high, b nonzero and trimmed).
Vector poly_rem(Vector a, const Vector& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    const Rational q = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= q * b[k];
    trim(a);
  }
  return a;
}

}  // namespace

Vector poly_gcd(Vector a, Vector b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Vector r = poly_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Rational lead = a.back();
    for (Rational& c : a) c /= lead;
  }
  return a;
}

unsigned distinct_roots(const BinaryForm& f) {
  if (f.is_zero()) throw Error(ErrorCode::kInvalidArgument, "zero form has no finite root set");
  // g(y) = f(1, y): coefficient k of f is the y^k coefficient.
  Vector g = f.coeffs();
  trim(g);
  const unsigned deg_g = static_cast<unsigned>(g.size() - 1);
  Vector dg;
  for (std::size_t k = 1; k < g.size(); ++k) dg.push_back(g[k] * static_cast<unsigned long>(k));
  const Vector common = dg.empty() ? Vector{1} : poly_gcd(g, dg);
  const unsigned deg_common = static_cast<unsigned>(common.size() - 1);
  const unsigned at_infinity = deg_g < f.degree() ? 1 : 0;
  return deg_g - deg_common + at_infinity;
}

// ---------------------------------------------------------------------------
// Line, scheme

Line::Line(ProjPoint p, ProjPoint q) : p_(std::move(p)), q_(std::move(q)) {
  if (p_.size() != q_.size()) throw Error(ErrorCode::kDimensionMismatch, "line endpoints differ in size");
  if (rank(ExactMatrix::from_rows({p_.coords(), q_.coords()}, p_.size())) != 2) {
    throw Error(ErrorCode::kInvalidArgument, "line needs two distinct points");
  }
}

BinaryForm Line::coordinate(std::size_t i) const { return BinaryForm(Vector{p_[i], q_[i]}); }

LengthTwoScheme::LengthTwoScheme(ProjPoint p1, ProjPoint p2)
    : p1_(std::move(p1)), p2_(std::move(p2)), line_(p1_, p2_) {}

std::string_view to_string(SchemeTag tag) {
  switch (tag) {
    case SchemeTag::kGeneric: return "generic";
    case SchemeTag::kSpecial: return "special";
    case SchemeTag::kVerySpecial: return "very-special";
  }
  return "unknown";
}

SchemeClass classify(const LengthTwoScheme& z) {
  const std::size_t nvars = z.nvars();
  SchemeClass out;
  for (std::size_t i = 0; i < nvars; ++i) {
    if (z.p1()[i] == 0 && z.p2()[i] == 0) out.vanishing.push_back(i);
  }

  std::optional<std::size_t> degenerate;
  for (std::size_t i = 0; i < nvars && !degenerate; ++i) {
    std::vector<Vector> columns;
    for (std::size_t j = 0; j < nvars; ++j) {
      if (j != i) columns.push_back({z.p1()[j], z.p2()[j]});
    }
    if (rank(ExactMatrix::from_columns(columns, 2)) < 2) degenerate = i;
  }

  out.normalization.resize(nvars);
  if (!degenerate) {
    for (std::size_t i = 0; i < nvars; ++i) out.normalization[i] = i;
    out.tag = SchemeTag::kGeneric;
    return out;
  }

  const auto vanishes = [&](std::size_t i) {
    return std::binary_search(out.vanishing.begin(), out.vanishing.end(), i);
  };
  std::vector<std::size_t> perm{*degenerate};
  for (std::size_t i = 0; i < nvars; ++i) {
    if (i != *degenerate && !vanishes(i)) perm.push_back(i);
  }
  out.a = perm.size() - 1;
  for (std::size_t i : out.vanishing) {
    if (i != *degenerate) perm.push_back(i);
  }
  out.normalization = std::move(perm);
  out.tag = out.vanishing.size() + 2 == nvars ? SchemeTag::kVerySpecial : SchemeTag::kSpecial;
  return out;
}

ProjPoint permute_point(const ProjPoint& p, const std::vector<std::size_t>& perm) {
  if (perm.size() != p.size()) throw Error(ErrorCode::kDimensionMismatch, "permutation size");
  Vector out(p.size());
  for (std::size_t k = 0; k < perm.size(); ++k) out[k] = p[perm[k]];
  return ProjPoint(std::move(out));
}

// ---------------------------------------------------------------------------
// Restriction

BinaryForm restrict_poly(const HomogPoly& p, const Line& line) {
  if (p.nvars() != line.nvars()) throw Error(ErrorCode::kDimensionMismatch, "restriction across rings");
  const unsigned m = p.degree();
  BinaryForm out(m);
  if (p.is_zero()) return out;

  // powers[i][e] = (p_i s + q_i t)^e
  std::vector<std::vector<BinaryForm>> powers(p.nvars());
  for (std::size_t i = 0; i < p.nvars(); ++i) {
    powers[i].push_back(BinaryForm(Vector{1}));
    for (unsigned e = 1; e <= m; ++e) powers[i].push_back(powers[i].back() * line.coordinate(i));
  }
  for (const auto& [mono, c] : p.terms()) {
    BinaryForm term(Vector{c});
    for (std::size_t i = 0; i < p.nvars(); ++i) {
      if (mono[i] != 0) term = term * powers[i][mono[i]];
    }
    out += term;
  }
  return out;
}

std::vector<BinaryForm> restrict_section(const EulerSection& sec, const Line& line) {
  std::vector<BinaryForm> out;
  out.reserve(sec.nvars());
  for (const HomogPoly& c : sec.components()) out.push_back(restrict_poly(c, line));
  return out;
}

std::vector<BinaryForm> restrict_section(const MixedTangentSection& sec, const Line& line,
                                         const DeformationPoint& b) {
  std::vector<BinaryForm> out = restrict_section(sec.p_part(), line);
  const bool has_base = std::any_of(sec.b_part().begin(), sec.b_part().end(),
                                    [](const HomogPoly& c) { return !c.is_zero(); });
  if (has_base) {
    const MixedTangentSection base_only =
        MixedTangentSection::from_b(sec.b_part(), sec.p_part().nvars(), sec.degree());
    out.push_back(restrict_poly(eta(b, base_only), line));
  }
  return out;
}

Vector flatten(const std::vector<BinaryForm>& forms) {
  Vector out;
  for (const BinaryForm& f : forms) out.insert(out.end(), f.coeffs().begin(), f.coeffs().end());
  return out;
}

BinaryForm restrict_mod_F(const HomogPoly& p, const Line& line, const HomogPoly& F) {
  if (p.degree() < F.degree()) {
    throw Error(ErrorCode::kDegreeMismatch, "reduction modulo F needs deg p >= deg F");
  }
  const BinaryForm xf = restrict_poly(F, line);
  if (xf.is_zero()) throw Error(ErrorCode::kLineInX, "the line lies on the hypersurface");
  BinaryForm r = restrict_poly(p, line);
  const unsigned d = xf.degree();
  const unsigned m = r.degree();
  const unsigned j0 = xf.multiplicity_at_t_zero();
  for (unsigned k = 0; k <= m - d; ++k) {
    const Rational q = r[k + j0] / xf[j0];
    if (q == 0) continue;
    for (unsigned j = j0; j <= d; ++j) r[k + j] -= q * xf[j];
  }
  return r;
}

Subspace iz_linear(const LengthTwoScheme& z) {
  return kernel_basis(ExactMatrix::from_rows({z.p1().coords(), z.p2().coords()}, z.nvars()));
}

Subspace ip_linear(const ProjPoint& p) {
  return kernel_basis(ExactMatrix::from_rows({p.coords()}, p.size()));
}

}  // namespace hypcheck
