#pragma once

#include <string>
#include <vector>

#include "hypcheck/rational.hpp"

namespace hypcheck {

// Point of P^{n+1}, stored with its first nonzero coordinate scaled to 1.
class ProjPoint {
 public:
  /// Throws Error(kInvalidArgument) for the zero vector.
  explicit ProjPoint(Vector coords);

  std::size_t size() const { return coords_.size(); }
  const Vector& coords() const { return coords_; }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }

  /// True for e_0, ..., e_{n+1}.
  bool is_coordinate_point() const;

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;

 private:
  Vector coords_;
};

/// Coordinates as "num/den" strings.
std::vector<std::string> format_point(const ProjPoint& p);

}  // namespace hypcheck
