#pragma once

#include <cstdint>

namespace hypcheck {

// SplitMix64 stream. Deterministic across platforms, which std::
// distributions are not. Child streams come from split(); a stream is a
// value and is never shared between concurrent computations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();

  /// Uniform integer in [lo, hi] (inclusive), by rejection.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);

  /// Independent child stream; advances this stream by one draw.
  Rng split();

  /// Child stream keyed by a label, without advancing this stream.
  Rng fork(std::uint64_t label) const;

 private:
  std::uint64_t state_;
};

}  // namespace hypcheck
