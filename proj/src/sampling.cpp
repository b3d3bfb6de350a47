#include "vdf/sampling.hpp"

namespace vdf {

long Sampler::integer(long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng_);
}

Rational Sampler::rational(long num_bound, long den_bound) {
  Rational q(integer(-num_bound, num_bound), integer(1, den_bound));
  q.canonicalize();
  return q;
}

Rational Sampler::nonzero_rational(long num_bound, long den_bound) {
  Rational q;
  do q = rational(num_bound, den_bound);
  while (q == 0);
  return q;
}

GroupElement Sampler::element(std::size_t rank, long num_bound, long den_bound) {
  std::vector<Rational> c(rank);
  for (auto& x : c) x = rational(num_bound, den_bound);
  return GroupElement(std::move(c));
}

GroupElement Sampler::positive_element(std::size_t rank, long num_bound, long den_bound) {
  for (;;) {
    GroupElement g = element(rank, num_bound, den_bound);
    if (coin()) {
      // Concentrate on a random coordinate so that deep coordinates are exercised.
      std::size_t lead = static_cast<std::size_t>(integer(0, static_cast<long>(rank) - 1));
      for (std::size_t i = 0; i < lead; ++i) g[i] = 0;
    }
    int s = g.sign();
    if (s > 0) return g;
    if (s < 0) return -g;
  }
}

GroupElement Sampler::small_positive(std::size_t rank) {
  GroupElement g = positive_element(rank);
  if (integer(0, 3) == 0) {
    Rational scale(1, 1);
    scale /= Rational(Integer(1) << static_cast<unsigned long>(integer(1, 24)));
    g *= scale;
  }
  return g;
}

Series Sampler::monomial(const FieldPtr& f, const GroupElement& v) {
  return Series::with_value(f, v, nonzero_rational());
}

Series Sampler::series(const FieldPtr& f, std::size_t max_terms, long num_bound) {
  GroupElement base = element(f->rank(), num_bound, 2);
  Series s = monomial(f, base);
  std::size_t extra = static_cast<std::size_t>(integer(0, static_cast<long>(max_terms) - 1));
  for (std::size_t k = 0; k < extra; ++k) s += monomial(f, base + positive_element(f->rank(), num_bound, 2));
  return s;
}

Series Sampler::small_series(const FieldPtr& f, std::size_t max_terms) {
  GroupElement base = positive_element(f->rank(), 3, 2);
  Series s = monomial(f, base);
  std::size_t extra = static_cast<std::size_t>(integer(0, static_cast<long>(max_terms) - 1));
  for (std::size_t k = 0; k < extra; ++k) s += monomial(f, base + positive_element(f->rank(), 3, 2));
  return s;
}

}  // namespace vdf
