#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "vdf/diffpoly.hpp"
#include "vdf/valgroup.hpp"

namespace vdf {

struct TropicalProfile {
  struct Entry {
    GroupElement value;  // v(P_i)
    unsigned weight;     // ||i||
    unsigned degree;     // |i|
    /// When set, value is only a lower bound (open: strict) for a coefficient
    /// known modulo its truncation.
    std::optional<bool> bound_open;
  };
  std::vector<Entry> entries;
  /// Ascending, deduplicated, all < 0.
  std::vector<GroupElement> breakpoints;
  /// plateaus[m] is the value of ddeg P^phi for v(phi) strictly between
  /// breakpoints[m-1] (or -infinity) and breakpoints[m] (or 0).
  std::vector<unsigned> plateaus;
};

TropicalProfile tropical_profile(const DiffPoly& p);
std::vector<GroupElement> breakpoints(const DiffPoly& p);

/// max{|i| : v(P_i) + ||i|| gamma minimal}. gamma has the rank of the field, or
/// one more (the infinitesimally extended group, coefficients embedded with a
/// trailing 0). Requires gamma < 0.
unsigned tropical_ddeg(const DiffPoly& p, const GroupElement& gamma);

/// Same argmin with gamma in Q^{n+1} and coefficient values embedded by
/// inserting 0 at position pos. No sign requirement.
unsigned tropical_ddeg_embedded(const DiffPoly& p, const GroupElement& gamma, std::size_t pos);

struct CutValidation {
  std::size_t inside_checked = 0;
  std::size_t outside_checked = 0;
  std::size_t discrepancies = 0;
};

/// Sampling oracle for Gamma(d): for gamma in the cut, every sampled m < 1 has
/// v(m') > gamma; for gamma outside, some m < 1 with v(m') <= gamma is found.
CutValidation validate_gamma_der(const FieldPtr& field, const Cut& cut, std::size_t samples,
                                 std::uint64_t seed);

/// Registered cut of the field, validated once per instance with 200 samples.
const Cut& gamma_der(const FieldPtr& field);
ConvexSubgroup s_der(const FieldPtr& field);
/// Gamma of the derivation carried by a polynomial: gamma_der translated by v(scale).
Cut gamma_der(const Derivation& d);

unsigned ndeg(const DiffPoly& p);
unsigned ndeg_geq(const DiffPoly& p, const GroupElement& gamma);
unsigned ndeg_prec(const DiffPoly& p, const Series& g);

/// Field with an extra constant infinitesimal generator, cached per base field.
FieldPtr infinitesimal_extension(const FieldPtr& base);
DiffPoly transported(const DiffPoly& p, const FieldPtr& target);

struct PcSequence {
  std::function<Series(std::size_t)> term;
  std::size_t length;  // number of available terms
  std::size_t window;  // stabilization window
};

struct CutNdeg {
  unsigned ndeg;
  std::size_t stabilized_at;  // first index of the constant run
  std::size_t window;
  std::vector<unsigned> history;
};

/// Heuristic evaluation of the Newton degree in the cut of a pc-sequence:
/// d_rho = ndeg_{>= gamma_rho} P_{+a_rho} until constant over the window.
CutNdeg ndeg_in_cut(const DiffPoly& p, const PcSequence& seq);

struct FlexProbe {
  std::set<GroupElement> values;
  bool hit_zero = false;
  std::size_t samples = 0;
};

/// Valuations of P(y) for sampled y = c m with |v(m)| < beta.
FlexProbe flex_probe(const DiffPoly& p, const GroupElement& beta, std::size_t samples,
                     std::uint64_t seed = 1);

}  // namespace vdf
