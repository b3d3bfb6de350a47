#pragma once

#include <map>
#include <string>
#include <vector>

#include "vdf/diffpoly.hpp"

namespace vdf {

/// Differential polynomial in X over Q.
using RatDiffPoly = std::map<MultiIndex, Rational>;

/// Formal derivation on Q{X}: X^(j) -> X^(j+1).
RatDiffPoly rat_derive(const RatDiffPoly& p);
RatDiffPoly rat_mul(const RatDiffPoly& a, const RatDiffPoly& b);

/// F^n_k, with F^0_0 = 1, F^n_0 = 0 for n >= 1 and
/// F^{n+1}_k = (F^n_k)' + X F^n_{k-1}. Memoized; safe to call concurrently.
RatDiffPoly fnk(unsigned n, unsigned k);

/// Evaluates at X^(j) = jet[j].
Series eval_rat(const RatDiffPoly& p, const std::vector<Series>& jet, const FieldPtr& field);

std::string rat_to_string(const RatDiffPoly& p, const std::string& var = "X");

}  // namespace vdf
