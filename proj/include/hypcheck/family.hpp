#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypcheck/point.hpp"
#include "hypcheck/poly.hpp"
#include "hypcheck/rng.hpp"

namespace hypcheck {

// The pair (n, d) together with the indexed deformation monomials J_d.
class FamilyShape {
 public:
  /// Requires n >= 1 and d >= 4.
  FamilyShape(unsigned n, unsigned d);

  unsigned n() const { return n_; }
  unsigned d() const { return d_; }
  std::size_t nvars() const { return n_ + 2; }
  const MonomialSet& jd() const { return jd_; }
  std::size_t size() const { return jd_.size(); }

 private:
  unsigned n_;
  unsigned d_;
  MonomialSet jd_;
};

using ShapePtr = std::shared_ptr<const FamilyShape>;

ShapePtr make_shape(unsigned n, unsigned d);

// b = (t_f) for f in J_d, dense in the order of shape.jd().
class DeformationPoint {
 public:
  /// The Fermat point b = 0.
  explicit DeformationPoint(ShapePtr shape);
  DeformationPoint(ShapePtr shape, Vector t);

  const FamilyShape& shape() const { return *shape_; }
  const ShapePtr& shape_ptr() const { return shape_; }
  const Vector& t() const { return t_; }

  /// t_f; zero when f is not in J_d.
  Rational coefficient(const Monomial& f) const;
  /// Throws Error(kInvalidArgument) when f is not in J_d.
  void set(const Monomial& f, const Rational& value);

  friend bool operator==(const DeformationPoint& a, const DeformationPoint& b) {
    return a.shape_->n() == b.shape_->n() && a.shape_->d() == b.shape_->d() && a.t_ == b.t_;
  }

 private:
  ShapePtr shape_;
  Vector t_;
};

/// {"n":..,"d":..,"t":{"x0^4*x1*x2":"3/1",..}}; zero entries are omitted.
nlohmann::ordered_json to_json(const DeformationPoint& b);
DeformationPoint deformation_from_json(const nlohmann::json& j);

HomogPoly fermat(unsigned n, unsigned d);

/// F = sum x_i^d + sum_f t_f f.
HomogPoly f_poly(const DeformationPoint& b);

// Tangent data of the total space: p_part is a section of E(m-1) (all
// components of degree m), b_part[k] is the coefficient of the k-th base
// direction, of degree m-1, so that both parts have homogeneous image
// under eta.
class MixedTangentSection {
 public:
  MixedTangentSection(EulerSection p_part, std::vector<HomogPoly> b_part);

  static MixedTangentSection from_p(const EulerSection& p, std::size_t jd_size);
  /// Zero p_part of degree `degree`; b_part degrees must be degree-1.
  static MixedTangentSection from_b(std::vector<HomogPoly> b_part, std::size_t nvars,
                                    unsigned degree);

  unsigned degree() const { return p_part_.degree(); }
  const EulerSection& p_part() const { return p_part_; }
  const std::vector<HomogPoly>& b_part() const { return b_part_; }

  friend bool operator==(const MixedTangentSection&, const MixedTangentSection&) = default;

 private:
  EulerSection p_part_;
  std::vector<HomogPoly> b_part_;
};

std::string format_mixed(const MixedTangentSection& s, const FamilyShape& shape);

/// sum_j p_j dF/dx_j, of degree deg(p) + d - 1.
HomogPoly eta(const DeformationPoint& b, const EulerSection& p);
/// p-part contribution plus sum_f b_f * f.
HomogPoly eta(const DeformationPoint& b, const MixedTangentSection& s);

/// c_ijk = 2 t_f / d when j == k and t_f / d otherwise, f = x_i^{d-2} x_j x_k.
/// Throws Error(kInvalidArgument) when i == j or i == k.
Rational c_coeff(const DeformationPoint& b, std::size_t i, std::size_t j, std::size_t k);

/// One omega_ijk per 0 <= i <= j <= n+1 and k distinct from i, j, ordered by
/// k, then i, then j.
struct OmegaEntry {
  std::size_t i, j, k;
  EulerSection section;
};
std::vector<OmegaEntry> omega_basis(const DeformationPoint& b);

// Formal sum of c * (w_1 ^ ... ^ w_r) with decomposable wedges.
struct WedgeTerm {
  HomogPoly coefficient;
  std::vector<MixedTangentSection> factors;
};
using WedgeSum = std::vector<WedgeTerm>;

/// eta_m(w_1 ^ ... ^ w_m) = sum_k (-1)^{k+1} eta(w_k) (x) wedge_{i != k} w_i.
/// Each wedge is put in a canonical factor order (tracking the sign), wedges
/// with a repeated factor vanish and equal wedges are merged.
WedgeSum koszul_eta_m(const DeformationPoint& b, const std::vector<MixedTangentSection>& factors);

/// Random b with A t = rhs, where A has one row per constraint (length
/// |J_d|). Free coordinates are drawn by sample_rational(rng, 1000).
/// Throws Error(kInfeasible) when the system has no solution.
DeformationPoint sample_b_constrained(const ShapePtr& shape, const std::vector<Vector>& rows,
                                      const Vector& rhs, Rng& rng);

/// Constraint row and right-hand side for F(p) = 0.
std::pair<Vector, Rational> vanishing_constraint(const FamilyShape& shape, const ProjPoint& p);

/// Random b whose hypersurface contains every given point.
DeformationPoint sample_b_through(const ShapePtr& shape, const std::vector<ProjPoint>& points,
                                  Rng& rng);

/// Uniform random b (bound 1000), the "general" point of the base.
DeformationPoint sample_b(const ShapePtr& shape, Rng& rng);

}  // namespace hypcheck
