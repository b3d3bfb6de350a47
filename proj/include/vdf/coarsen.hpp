#pragma once

#include <cstddef>
#include <cstdint>

#include "vdf/newton.hpp"
#include "vdf/series.hpp"

namespace vdf {

/// Coarsening of a field by the convex subgroup Delta = {first k coordinates zero}.
/// The residue field is the grid instance on generators k..n-1 with the
/// residues of their logarithmic derivatives.
struct Coarsening {
  FieldPtr base;
  ConvexSubgroup delta;
  FieldPtr residue;

  std::size_t dotted_rank() const { return delta.prefix_len; }
};

/// Throws ContractError if some g_i^dagger (i >= k) is not in the coarse valuation ring.
Coarsening coarsen(const FieldPtr& base, std::size_t prefix_len);

GroupElement coarse_val(const Series& f, const ConvexSubgroup& delta);
/// Terms of coarse value 0, re-expressed over the residue field.
Series residue(const Series& f, const Coarsening& c);
/// Concatenation (dotted part, Delta part).
GroupElement lift_val(const GroupElement& dotted, const GroupElement& delta_part);
/// Residue valuation of f / d where d is the monomial of value (coarse_val(f), 0).
GroupElement unit_part_valuation(const Series& f, const Coarsening& c);

/// Projection of Gamma(d) to Gamma / Delta.
Cut projected_gamma_der(const Coarsening& c);

struct CoarseCheck {
  std::size_t checked = 0;
  std::size_t failures = 0;
};

/// For dotted gamma in the projected cut: every sampled m with coarse value > 0
/// has coarse_val(m') > gamma.
CoarseCheck check_projection_inclusion(const Coarsening& c, std::size_t samples, std::uint64_t seed);

}  // namespace vdf
