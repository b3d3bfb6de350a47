#pragma once

#include <cstdint>
#include <random>

#include "vdf/series.hpp"

namespace vdf {

/// Deterministic generator of small rationals, group elements and series used
/// by the sampling validators and probes.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& engine() { return rng_; }
  long integer(long lo, long hi);
  /// p/q with |p| <= num_bound, 1 <= q <= den_bound.
  Rational rational(long num_bound = 6, long den_bound = 4);
  Rational nonzero_rational(long num_bound = 6, long den_bound = 4);
  bool coin() { return integer(0, 1) == 1; }

  GroupElement element(std::size_t rank, long num_bound = 6, long den_bound = 4);
  GroupElement positive_element(std::size_t rank, long num_bound = 6, long den_bound = 4);
  /// Positive element, occasionally tiny (scale 2^-j) or concentrated in one coordinate.
  GroupElement small_positive(std::size_t rank);

  Series monomial(const FieldPtr& f, const GroupElement& v);
  /// Exact series with up to max_terms terms of values v(f) + positive offsets.
  Series series(const FieldPtr& f, std::size_t max_terms = 3, long num_bound = 3);
  Series small_series(const FieldPtr& f, std::size_t max_terms = 3);  // f < 1

 private:
  std::mt19937_64 rng_;
};

}  // namespace vdf
