#include "hypcheck/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "hypcheck/error.hpp"

namespace hypcheck {

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(std::vector<unsigned> exponents)
    : exponents_(std::move(exponents)),
      degree_(std::accumulate(exponents_.begin(), exponents_.end(), 0U)) {}

Monomial Monomial::variable(std::size_t nvars, std::size_t i) {
  if (i >= nvars) throw Error(ErrorCode::kInvalidArgument, "variable index out of range");
  std::vector<unsigned> e(nvars, 0);
  e[i] = 1;
  return Monomial(std::move(e));
}

Monomial Monomial::operator*(const Monomial& rhs) const {
  if (nvars() != rhs.nvars()) throw Error(ErrorCode::kDimensionMismatch, "monomial nvars mismatch");
  std::vector<unsigned> e(exponents_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += rhs.exponents_[i];
  return Monomial(std::move(e));
}

bool Monomial::divisible_by(const Monomial& rhs) const {
  for (std::size_t i = 0; i < exponents_.size(); ++i)
    if (exponents_[i] < rhs.exponents_[i]) return false;
  return true;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
  return a.exponents_ <=> b.exponents_;
}

std::string format_monomial(const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < m.nvars(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += 'x' + std::to_string(i);
    if (m[i] > 1) out += '^' + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

// ---------------------------------------------------------------------------
// MonomialSet

MonomialSet::MonomialSet(std::vector<Monomial> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end(), DescendingOrder{});
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  for (std::size_t k = 0; k < members_.size(); ++k) index_.emplace(members_[k], k);
}

std::size_t MonomialSet::index_of(const Monomial& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) {
    throw Error(ErrorCode::kInvalidArgument, "monomial " + format_monomial(m) + " not in set");
  }
  return it->second;
}

namespace {

void enumerate(std::vector<unsigned>& e, std::size_t pos, unsigned remaining, unsigned cap,
               std::vector<Monomial>& out) {
  if (pos + 1 == e.size()) {
    if (remaining <= cap) {
      e[pos] = remaining;
      out.emplace_back(e);
    }
    return;
  }
  for (unsigned k = std::min(remaining, cap) + 1; k-- > 0;) {
    e[pos] = k;
    enumerate(e, pos + 1, remaining - k, cap, out);
  }
  e[pos] = 0;
}

MonomialSet bounded_monomials(std::size_t nvars, unsigned degree, unsigned cap) {
  std::vector<Monomial> out;
  if (nvars == 0) return MonomialSet(std::move(out));
  std::vector<unsigned> e(nvars, 0);
  enumerate(e, 0, degree, cap, out);
  return MonomialSet(std::move(out));
}

}  // namespace

MonomialSet all_monomials(std::size_t nvars, unsigned degree) {
  return bounded_monomials(nvars, degree, degree);
}

MonomialSet gen_jd(unsigned n, unsigned d) {
  if (n < 1 || d < 3) throw Error(ErrorCode::kInvalidArgument, "J_d needs n >= 1 and d >= 3");
  return bounded_monomials(n + 2, d, d - 2);
}

// ---------------------------------------------------------------------------
// HomogPoly

HomogPoly HomogPoly::monomial(const Monomial& m, const Rational& coefficient) {
  HomogPoly p(m.nvars(), m.degree());
  p.add_term(m, coefficient);
  return p;
}

Rational HomogPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void HomogPoly::add_term(const Monomial& m, const Rational& c) {
  if (m.nvars() != nvars_ || m.degree() != degree_) {
    throw Error(ErrorCode::kDegreeMismatch,
                "term " + format_monomial(m) + " does not fit a degree-" +
                    std::to_string(degree_) + " form in " + std::to_string(nvars_) + " variables");
  }
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

namespace {

void require_compatible(const HomogPoly& a, const HomogPoly& b) {
  if (a.nvars() != b.nvars() || a.degree() != b.degree()) {
    throw Error(ErrorCode::kDegreeMismatch, "adding forms of different degree or ring");
  }
}

}  // namespace

HomogPoly& HomogPoly::operator+=(const HomogPoly& rhs) {
  require_compatible(*this, rhs);
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

HomogPoly& HomogPoly::operator-=(const HomogPoly& rhs) {
  require_compatible(*this, rhs);
  for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
  return *this;
}

HomogPoly& HomogPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

HomogPoly HomogPoly::operator*(const HomogPoly& rhs) const {
  if (nvars_ != rhs.nvars_) throw Error(ErrorCode::kDimensionMismatch, "product across rings");
  HomogPoly out(nvars_, degree_ + rhs.degree_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : rhs.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

Rational HomogPoly::evaluate(std::span<const Rational> point) const {
  if (point.size() != nvars_) throw Error(ErrorCode::kDimensionMismatch, "evaluation point size");
  Rational total = 0;
  for (const auto& [m, c] : terms_) {
    Rational value = c;
    for (std::size_t i = 0; i < nvars_ && value != 0; ++i) {
      for (unsigned k = 0; k < m[i]; ++k) value *= point[i];
    }
    total += value;
  }
  return total;
}

Vector HomogPoly::coordinates(const MonomialSet& basis) const {
  Vector v(basis.size());
  for (const auto& [m, c] : terms_) v[basis.index_of(m)] = c;
  return v;
}

HomogPoly HomogPoly::from_coordinates(const MonomialSet& basis, std::span<const Rational> coords,
                                      std::size_t nvars, unsigned degree) {
  if (coords.size() != basis.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "coordinate vector does not match basis");
  }
  HomogPoly p(nvars, degree);
  for (std::size_t k = 0; k < coords.size(); ++k) p.add_term(basis[k], coords[k]);
  return p;
}

HomogPoly HomogPoly::permute_variables(const std::vector<std::size_t>& perm) const {
  if (perm.size() != nvars_) throw Error(ErrorCode::kDimensionMismatch, "permutation size");
  HomogPoly out(nvars_, degree_);
  for (const auto& [m, c] : terms_) {
    std::vector<unsigned> e(nvars_, 0);
    for (std::size_t i = 0; i < nvars_; ++i) e[perm[i]] += m[i];
    out.add_term(Monomial(std::move(e)), c);
  }
  return out;
}

HomogPoly partial_derivative(const HomogPoly& p, std::size_t i) {
  if (i >= p.nvars()) throw Error(ErrorCode::kInvalidArgument, "derivative index out of range");
  HomogPoly out(p.nvars(), p.degree() == 0 ? 0 : p.degree() - 1);
  for (const auto& [m, c] : p.terms()) {
    if (m[i] == 0) continue;
    std::vector<unsigned> e = m.exponents();
    --e[i];
    out.add_term(Monomial(std::move(e)), c * m[i]);
  }
  return out;
}

std::string format_poly(const HomogPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : p.terms()) {
    const bool negative = c < 0;
    if (negative) {
      out += '-';
    } else if (!out.empty()) {
      out += '+';
    }
    const Rational magnitude = negative ? Rational(-c) : c;
    const bool constant = m.degree() == 0;
    if (magnitude != 1 || constant) {
      out += magnitude.get_str();
      if (!constant) out += '*';
    }
    if (!constant) out += format_monomial(m);
  }
  return out;
}

namespace {

[[noreturn]] void parse_error(std::string_view text, const std::string& why) {
  throw Error(ErrorCode::kParse, "cannot parse polynomial '" + std::string(text) + "': " + why);
}

unsigned parse_unsigned(std::string_view digits, std::string_view text) {
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(),
                                     [](unsigned char ch) { return std::isdigit(ch); })) {
    parse_error(text, "expected digits, got '" + std::string(digits) + "'");
  }
  return static_cast<unsigned>(std::stoul(std::string(digits)));
}

}  // namespace

HomogPoly parse_poly(std::string_view text, std::size_t nvars, unsigned degree) {
  if (text == "0") return HomogPoly(nvars, degree);
  if (text.empty()) parse_error(text, "empty input");

  std::vector<std::pair<Monomial, Rational>> terms;
  std::size_t pos = 0;
  while (pos < text.size()) {
    Rational sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      if (text[pos] == '-') sign = -1;
      ++pos;
    } else if (pos != 0) {
      parse_error(text, "missing sign between terms");
    }
    std::size_t end = text.find_first_of("+-", pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view term = text.substr(pos, end - pos);
    if (term.empty()) parse_error(text, "empty term");

    Rational coeff = sign;
    std::vector<unsigned> e(nvars, 0);
    std::size_t fpos = 0;
    while (fpos <= term.size()) {
      std::size_t fend = term.find('*', fpos);
      if (fend == std::string_view::npos) fend = term.size();
      const std::string_view factor = term.substr(fpos, fend - fpos);
      if (factor.empty()) parse_error(text, "empty factor");
      if (factor.front() == 'x') {
        const auto caret = factor.find('^');
        const unsigned var = parse_unsigned(factor.substr(1, caret == std::string_view::npos
                                                                 ? std::string_view::npos
                                                                 : caret - 1),
                                            text);
        const unsigned power =
            caret == std::string_view::npos ? 1 : parse_unsigned(factor.substr(caret + 1), text);
        if (var >= nvars) parse_error(text, "variable x" + std::to_string(var) + " out of range");
        e[var] += power;
      } else {
        coeff *= parse_rational(factor);
      }
      fpos = fend + 1;
    }
    terms.emplace_back(Monomial(std::move(e)), coeff);
    pos = end;
  }

  HomogPoly p(nvars, terms.front().first.degree());
  for (const auto& [m, c] : terms) {
    if (m.degree() != p.degree()) parse_error(text, "not homogeneous");
    p.add_term(m, c);
  }
  if (p.is_zero() && p.degree() != degree) return HomogPoly(nvars, degree);
  return p;
}

HomogPoly linear_form(std::span<const Rational> coeffs) {
  HomogPoly p(coeffs.size(), 1);
  for (std::size_t i = 0; i < coeffs.size(); ++i) p.add_term(Monomial::variable(coeffs.size(), i), coeffs[i]);
  return p;
}

// ---------------------------------------------------------------------------
// EulerSection

EulerSection::EulerSection(std::size_t nvars, unsigned degree)
    : degree_(degree), components_(nvars, HomogPoly(nvars, degree)) {}

EulerSection::EulerSection(std::vector<HomogPoly> components) : components_(std::move(components)) {
  if (components_.empty()) throw Error(ErrorCode::kInvalidArgument, "section needs components");
  degree_ = components_.front().degree();
  for (const HomogPoly& c : components_) {
    if (c.degree() != degree_ || c.nvars() != components_.size()) {
      throw Error(ErrorCode::kDegreeMismatch, "section components must share degree and ring");
    }
  }
}

EulerSection EulerSection::field(const HomogPoly& c, std::size_t k) {
  EulerSection s(c.nvars(), c.degree());
  s.components_.at(k) = c;
  return s;
}

bool EulerSection::is_zero() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const HomogPoly& c) { return c.is_zero(); });
}

EulerSection& EulerSection::operator+=(const EulerSection& rhs) {
  if (rhs.nvars() != nvars()) throw Error(ErrorCode::kDimensionMismatch, "section size mismatch");
  for (std::size_t i = 0; i < components_.size(); ++i) components_[i] += rhs.components_[i];
  return *this;
}

EulerSection& EulerSection::operator-=(const EulerSection& rhs) {
  if (rhs.nvars() != nvars()) throw Error(ErrorCode::kDimensionMismatch, "section size mismatch");
  for (std::size_t i = 0; i < components_.size(); ++i) components_[i] -= rhs.components_[i];
  return *this;
}

EulerSection& EulerSection::operator*=(const Rational& c) {
  for (HomogPoly& p : components_) p *= c;
  return *this;
}

EulerSection EulerSection::operator*(const HomogPoly& f) const {
  std::vector<HomogPoly> out;
  out.reserve(components_.size());
  for (const HomogPoly& p : components_) out.push_back(p * f);
  return EulerSection(std::move(out));
}

Vector EulerSection::coordinates(const MonomialSet& basis) const {
  Vector v;
  v.reserve(basis.size() * components_.size());
  for (const HomogPoly& p : components_) {
    const Vector block = p.coordinates(basis);
    v.insert(v.end(), block.begin(), block.end());
  }
  return v;
}

HomogPoly EulerSection::contract(const HomogPoly& form) const {
  if (form.nvars() != nvars()) throw Error(ErrorCode::kDimensionMismatch, "contract across rings");
  HomogPoly out(nvars(), degree_ + (form.degree() == 0 ? 0 : form.degree() - 1));
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (components_[i].is_zero()) continue;
    const HomogPoly di = partial_derivative(form, i);
    if (di.is_zero()) continue;
    out += components_[i] * di;
  }
  return out;
}

EulerSection euler_alpha(unsigned n) {
  std::vector<HomogPoly> comps;
  for (std::size_t i = 0; i < n + 2; ++i) comps.push_back(HomogPoly::variable(n + 2, i));
  return EulerSection(std::move(comps));
}

std::string format_section(const EulerSection& s) {
  std::string out;
  for (std::size_t i = 0; i < s.nvars(); ++i) {
    if (s[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + format_poly(s[i]) + ")*d/dx" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

Subspace span_of(const MonomialSet& monomials, const MonomialSet& full_basis) {
  std::vector<Vector> generators;
  generators.reserve(monomials.size());
  for (const Monomial& m : monomials) {
    Vector v(full_basis.size());
    v[full_basis.index_of(m)] = 1;
    generators.push_back(std::move(v));
  }
  return Subspace::span(full_basis.size(), generators);
}

Subspace product_span(const Subspace& linear_forms, const MonomialSet& monomials,
                      const MonomialSet& target_basis) {
  std::vector<Vector> generators;
  for (std::size_t k = 0; k < linear_forms.dim(); ++k) {
    const HomogPoly l = linear_form(linear_forms.basis_vector(k));
    for (const Monomial& m : monomials) {
      generators.push_back((l * HomogPoly::monomial(m)).coordinates(target_basis));
    }
  }
  return Subspace::span(target_basis.size(), generators);
}

}  // namespace hypcheck
