#include "hypcheck/point.hpp"

#include <algorithm>

#include "hypcheck/error.hpp"

namespace hypcheck {

ProjPoint::ProjPoint(Vector coords) : coords_(std::move(coords)) {
  auto lead = std::find_if(coords_.begin(), coords_.end(), [](const Rational& c) { return c != 0; });
  if (lead == coords_.end()) throw Error(ErrorCode::kInvalidArgument, "projective point is zero");
  const Rational scale = 1 / *lead;
  for (Rational& c : coords_) c *= scale;
}

bool ProjPoint::is_coordinate_point() const {
  return std::count_if(coords_.begin(), coords_.end(), [](const Rational& c) { return c != 0; }) == 1;
}

std::vector<std::string> format_point(const ProjPoint& p) {
  std::vector<std::string> out;
  for (const Rational& c : p.coords()) out.push_back(format_rational(c));
  return out;
}

}  // namespace hypcheck
