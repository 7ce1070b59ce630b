#include "hypcheck/rational.hpp"

#include <algorithm>
#include <cctype>

#include "hypcheck/error.hpp"
#include "hypcheck/rng.hpp"

namespace hypcheck {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::kDimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::kDegreeMismatch: return "DEGREE_MISMATCH";
    case ErrorCode::kInfeasible: return "INFEASIBLE";
    case ErrorCode::kLineInX: return "LINE_IN_X";
    case ErrorCode::kCoordinatePoint: return "COORDINATE_POINT";
    case ErrorCode::kNotInWm: return "NOT_IN_WM";
    case ErrorCode::kNonGenericScheme: return "NON_GENERIC_Z";
    case ErrorCode::kParse: return "PARSE";
  }
  return "UNKNOWN";
}

std::string format_rational(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

Integer parse_integer(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' ||
      den.front() == '+') {
    throw Error(ErrorCode::kParse, "malformed rational: '" + std::string(text) + "'");
  }
  Integer d = parse_integer(den);
  if (d == 0) throw Error(ErrorCode::kParse, "zero denominator: '" + std::string(text) + "'");
  Rational q(parse_integer(num), d);
  q.canonicalize();
  return q;
}

Rational sample_rational(Rng& rng, unsigned long bound) {
  if (bound == 0) throw Error(ErrorCode::kInvalidArgument, "sample bound must be >= 1");
  const auto b = static_cast<std::int64_t>(bound);
  const std::int64_t num = rng.uniform(-b, b);
  const std::int64_t den = rng.uniform(1, b);
  Rational q{Integer(static_cast<long>(num)), Integer(static_cast<long>(den))};
  q.canonicalize();
  return q;
}

Rational sample_nonzero_rational(Rng& rng, unsigned long bound) {
  for (;;) {
    Rational q = sample_rational(rng, bound);
    if (q != 0) return q;
  }
}

bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
}

}  // namespace hypcheck
