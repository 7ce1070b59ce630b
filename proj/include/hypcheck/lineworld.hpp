#pragma once

#include <string>
#include <vector>

#include "hypcheck/family.hpp"
#include "hypcheck/matrix.hpp"
#include "hypcheck/point.hpp"
#include "hypcheck/poly.hpp"

namespace hypcheck {

// Form of degree m on P^1 with coordinates (s, t); coefficient k multiplies
// s^{m-k} t^k.
class BinaryForm {
 public:
  explicit BinaryForm(unsigned degree) : coeffs_(degree + 1) {}
  explicit BinaryForm(Vector coeffs);

  static BinaryForm monomial(unsigned degree, unsigned t_power, const Rational& c = 1);

  unsigned degree() const { return static_cast<unsigned>(coeffs_.size() - 1); }
  const Vector& coeffs() const { return coeffs_; }
  const Rational& operator[](std::size_t k) const { return coeffs_[k]; }
  Rational& operator[](std::size_t k) { return coeffs_[k]; }
  bool is_zero() const { return hypcheck::is_zero(coeffs_); }

  BinaryForm& operator+=(const BinaryForm& rhs);
  BinaryForm& operator-=(const BinaryForm& rhs);
  BinaryForm& operator*=(const Rational& c);
  friend BinaryForm operator+(BinaryForm a, const BinaryForm& b) { return a += b; }
  friend BinaryForm operator-(BinaryForm a, const BinaryForm& b) { return a -= b; }
  friend BinaryForm operator*(BinaryForm a, const Rational& c) { return a *= c; }
  BinaryForm operator*(const BinaryForm& rhs) const;

  Rational evaluate(const Rational& s, const Rational& t) const;

  /// Order of vanishing at s = 0 (zero coefficients counted from the t^m
  /// end) and at t = 0 (counted from the s^m end). Zero form: degree + 1.
  unsigned multiplicity_at_s_zero() const;
  unsigned multiplicity_at_t_zero() const;

  friend bool operator==(const BinaryForm&, const BinaryForm&) = default;

 private:
  Vector coeffs_;
};

std::string format_binary(const BinaryForm& f);

/// Number of distinct roots in P^1 over an algebraic closure; throws
/// Error(kInvalidArgument) for the zero form.
unsigned distinct_roots(const BinaryForm& f);

/// Monic gcd of univariate polynomials given low-to-high.
Vector poly_gcd(Vector a, Vector b);

// Line through two distinct points, parameterized by (s, t) -> s p + t q.
class Line {
 public:
  Line(ProjPoint p, ProjPoint q);

  const ProjPoint& p() const { return p_; }
  const ProjPoint& q() const { return q_; }
  std::size_t nvars() const { return p_.size(); }
  /// Restriction of x_i: p_i s + q_i t.
  BinaryForm coordinate(std::size_t i) const;

 private:
  ProjPoint p_;
  ProjPoint q_;
};

// Two distinct points; on the line through them p1 sits at (1,0) and p2 at
// (0,1).
class LengthTwoScheme {
 public:
  LengthTwoScheme(ProjPoint p1, ProjPoint p2);

  const ProjPoint& p1() const { return p1_; }
  const ProjPoint& p2() const { return p2_; }
  const Line& line() const { return line_; }
  std::size_t nvars() const { return p1_.size(); }

 private:
  ProjPoint p1_;
  ProjPoint p2_;
  Line line_;
};

enum class SchemeTag { kGeneric, kSpecial, kVerySpecial };

std::string_view to_string(SchemeTag tag);

struct SchemeClass {
  SchemeTag tag = SchemeTag::kGeneric;
  /// Number of non-vanishing coordinates after x_0 in normalized order;
  /// meaningful for Special (very special schemes have a = 1).
  std::size_t a = 0;
  /// Indices i with x_i vanishing at both points, ascending.
  std::vector<std::size_t> vanishing;
  /// perm[new] = old. Generic schemes get the identity.
  std::vector<std::size_t> normalization;
};

SchemeClass classify(const LengthTwoScheme& z);

/// Point with coordinates reordered by perm[new] = old.
ProjPoint permute_point(const ProjPoint& p, const std::vector<std::size_t>& perm);

/// Substitutes x = s p + t q.
BinaryForm restrict_poly(const HomogPoly& p, const Line& line);

/// Component-wise restriction.
std::vector<BinaryForm> restrict_section(const EulerSection& sec, const Line& line);

/// Restricted p_part components followed, when the base part is nonzero, by
/// one more form: the restriction of its eta-image sum_f b_f f.
std::vector<BinaryForm> restrict_section(const MixedTangentSection& sec, const Line& line,
                                         const DeformationPoint& b);

/// Concatenated coefficient vector of a restricted section.
Vector flatten(const std::vector<BinaryForm>& forms);

/// Remainder of the restriction of p modulo xi(F) * H^0(O(m - d)): with j0
/// the lowest nonzero index of xi(F), the multiples of xi(F) clear indices
/// j0 .. j0 + m - d. Throws Error(kLineInX) when xi(F) = 0 and
/// Error(kDegreeMismatch) when deg p < deg F.
BinaryForm restrict_mod_F(const HomogPoly& p, const Line& line, const HomogPoly& F);

/// Linear forms vanishing on both points, as coordinate vectors.
Subspace iz_linear(const LengthTwoScheme& z);

/// Linear forms vanishing at p.
Subspace ip_linear(const ProjPoint& p);

}  // namespace hypcheck
