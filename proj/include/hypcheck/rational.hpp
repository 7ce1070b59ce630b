#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace hypcheck {

class Rng;

// mpq_class keeps every value in lowest terms with a positive denominator
// as long as it is produced by arithmetic or by parse_rational().
using Rational = mpq_class;
using Integer = mpz_class;
using Vector = std::vector<Rational>;

/// Renders as "num/den" (denominator always present, e.g. "3/1", "-1/2").
std::string format_rational(const Rational& q);

/// Accepts "a", "a/b" with optional sign; the result is canonicalized.
/// Throws Error(kParse) on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Numerator uniform in [-bound, bound], denominator uniform in [1, bound].
Rational sample_rational(Rng& rng, unsigned long bound);

/// Same distribution conditioned on a nonzero result.
Rational sample_nonzero_rational(Rng& rng, unsigned long bound);

bool is_zero(const Vector& v);

}  // namespace hypcheck
