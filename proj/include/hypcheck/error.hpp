#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hypcheck {

enum class ErrorCode {
  kInvalidArgument,
  kDimensionMismatch,
  kDegreeMismatch,
  kInfeasible,       // no deformation point realizes the requested constraints
  kLineInX,          // the restriction of F to the line is identically zero
  kCoordinatePoint,  // point is one of the coordinate points e_0..e_{n+1}
  kNotInWm,          // F restricted to the line is not c * s^(d-m) t^m
  kNonGenericScheme,
  kParse,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hypcheck
