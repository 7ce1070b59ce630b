#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hypcheck/matrix.hpp"
#include "hypcheck/rational.hpp"

namespace hypcheck {

/// x_0^{e_0} ... x_{k}^{e_k}.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<unsigned> exponents);

  static Monomial one(std::size_t nvars) { return Monomial(std::vector<unsigned>(nvars, 0)); }
  static Monomial variable(std::size_t nvars, std::size_t i);

  std::size_t nvars() const { return exponents_.size(); }
  unsigned degree() const { return degree_; }
  unsigned operator[](std::size_t i) const { return exponents_[i]; }
  const std::vector<unsigned>& exponents() const { return exponents_; }

  Monomial operator*(const Monomial& rhs) const;
  bool divisible_by(const Monomial& rhs) const;

  /// Graded lexicographic with x_0 > x_1 > ... > x_{k}.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.exponents_ == b.exponents_;
  }

 private:
  std::vector<unsigned> exponents_;
  unsigned degree_ = 0;
};

/// "x0^4*x1*x2"; "1" for the constant monomial.
std::string format_monomial(const Monomial& m);

/// Ordering that puts larger monomials first; used for canonical indexing
/// and for printing.
struct DescendingOrder {
  bool operator()(const Monomial& a, const Monomial& b) const { return a > b; }
};

/// Ordered set of monomials with a position index.
class MonomialSet {
 public:
  MonomialSet() = default;
  /// Members are sorted into descending canonical order; duplicates dropped.
  explicit MonomialSet(std::vector<Monomial> members);

  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const std::vector<Monomial>& members() const { return members_; }
  const Monomial& operator[](std::size_t k) const { return members_[k]; }
  bool contains(const Monomial& m) const { return index_.count(m) != 0; }
  /// Position of m; throws Error(kInvalidArgument) when absent.
  std::size_t index_of(const Monomial& m) const;

  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

 private:
  std::vector<Monomial> members_;
  std::map<Monomial, std::size_t, DescendingOrder> index_;
};

/// Every monomial of degree `degree` in `nvars` variables.
MonomialSet all_monomials(std::size_t nvars, unsigned degree);

/// Degree-d monomials in n+2 variables with every exponent <= d-2.
MonomialSet gen_jd(unsigned n, unsigned d);

/// Homogeneous polynomial with sparse rational coefficients. The zero
/// polynomial still carries its degree.
class HomogPoly {
 public:
  using Terms = std::map<Monomial, Rational, DescendingOrder>;

  HomogPoly(std::size_t nvars, unsigned degree) : nvars_(nvars), degree_(degree) {}

  static HomogPoly monomial(const Monomial& m, const Rational& coefficient = 1);
  static HomogPoly variable(std::size_t nvars, std::size_t i) {
    return monomial(Monomial::variable(nvars, i));
  }

  std::size_t nvars() const { return nvars_; }
  unsigned degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const Monomial& m) const;

  /// Adds c * m; m must have matching degree and nvars.
  void add_term(const Monomial& m, const Rational& c);

  HomogPoly& operator+=(const HomogPoly& rhs);
  HomogPoly& operator-=(const HomogPoly& rhs);
  HomogPoly& operator*=(const Rational& c);
  friend HomogPoly operator+(HomogPoly a, const HomogPoly& b) { return a += b; }
  friend HomogPoly operator-(HomogPoly a, const HomogPoly& b) { return a -= b; }
  friend HomogPoly operator*(HomogPoly a, const Rational& c) { return a *= c; }
  friend HomogPoly operator*(const Rational& c, HomogPoly a) { return a *= c; }
  HomogPoly operator-() const { return *this * Rational(-1); }
  HomogPoly operator*(const HomogPoly& rhs) const;

  Rational evaluate(std::span<const Rational> point) const;

  /// Dense coefficients in the order of `basis`; every term must be a member.
  Vector coordinates(const MonomialSet& basis) const;
  static HomogPoly from_coordinates(const MonomialSet& basis, std::span<const Rational> coords,
                                    std::size_t nvars, unsigned degree);

  /// Substitutes x_i -> x_{perm[i]}: the exponent of x_i moves to x_{perm[i]}.
  HomogPoly permute_variables(const std::vector<std::size_t>& perm) const;

  friend bool operator==(const HomogPoly&, const HomogPoly&) = default;

 private:
  std::size_t nvars_;
  unsigned degree_;
  Terms terms_;
};

HomogPoly partial_derivative(const HomogPoly& p, std::size_t i);

/// Canonical text, e.g. "3/2*x0^4*x1*x2-x1^7"; "0" for the zero polynomial.
std::string format_poly(const HomogPoly& p);

/// Parses the canonical text form (terms in any order; "1*" optional).
/// `degree` is needed only to type the zero polynomial.
HomogPoly parse_poly(std::string_view text, std::size_t nvars, unsigned degree);

/// Section of the Euler bundle twisted so that each component is a form of
/// degree `degree`; component i is the coefficient of d/dx_i.
class EulerSection {
 public:
  EulerSection(std::size_t nvars, unsigned degree);
  explicit EulerSection(std::vector<HomogPoly> components);

  /// c * d/dx_k.
  static EulerSection field(const HomogPoly& c, std::size_t k);

  std::size_t nvars() const { return components_.size(); }
  unsigned degree() const { return degree_; }
  const HomogPoly& operator[](std::size_t i) const { return components_[i]; }
  HomogPoly& operator[](std::size_t i) { return components_[i]; }
  const std::vector<HomogPoly>& components() const { return components_; }
  bool is_zero() const;

  EulerSection& operator+=(const EulerSection& rhs);
  EulerSection& operator-=(const EulerSection& rhs);
  EulerSection& operator*=(const Rational& c);
  friend EulerSection operator+(EulerSection a, const EulerSection& b) { return a += b; }
  friend EulerSection operator-(EulerSection a, const EulerSection& b) { return a -= b; }
  friend EulerSection operator*(EulerSection a, const Rational& c) { return a *= c; }
  /// Multiplies every component by a form.
  EulerSection operator*(const HomogPoly& f) const;

  /// Concatenated component coordinates: block i holds component i in the
  /// order of `basis` (all monomials of this degree).
  Vector coordinates(const MonomialSet& basis) const;

  /// sum_i c_i * d(form)/dx_i.
  HomogPoly contract(const HomogPoly& form) const;

  friend bool operator==(const EulerSection&, const EulerSection&) = default;

 private:
  unsigned degree_;
  std::vector<HomogPoly> components_;
};

/// Euler field: component i is x_i.
EulerSection euler_alpha(unsigned n);

std::string format_section(const EulerSection& s);

/// Span of a set of monomials of one degree, as coordinates in the full
/// monomial basis of that degree.
Subspace span_of(const MonomialSet& monomials, const MonomialSet& full_basis);

/// Span of { l * f : l in linear_forms, f in monomials } inside the degree
/// deg(f)+1 space with basis `target_basis`. Linear forms are coordinate
/// vectors over x_0..x_{nvars-1}.
Subspace product_span(const Subspace& linear_forms, const MonomialSet& monomials,
                      const MonomialSet& target_basis);

/// Linear form sum_i coeffs[i] x_i.
HomogPoly linear_form(std::span<const Rational> coeffs);

}  // namespace hypcheck
