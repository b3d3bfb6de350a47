#pragma once

#include <compare>
#include <optional>
#include <string>

#include "vdf/valgroup.hpp"

namespace vdf {

/// Precision bound carried by a series. A closed bound at tau says the unknown
/// tail has valuation >= tau and every kept term lies strictly below tau; an
/// open bound says the tail has valuation > tau and kept terms lie at or below tau.
/// An absent bound means the series is exact.
struct Truncation {
  std::optional<GroupElement> at;
  bool open = false;

  static Truncation infinite() { return {}; }
  static Truncation closed(GroupElement g) { return {std::move(g), false}; }
  static Truncation open_at(GroupElement g) { return {std::move(g), true}; }

  bool is_finite() const { return at.has_value(); }
  /// Whether a term of value v survives this bound.
  bool keeps(const GroupElement& v) const;
  /// Whether every element beyond the bound has valuation >= g.
  bool implies_at_least(const GroupElement& g) const;

  Truncation shifted(const GroupElement& delta) const;
  Truncation operator+(const GroupElement& delta) const { return shifted(delta); }

  /// Infinite is the largest; at equal position the open bound is the larger.
  friend std::strong_ordering operator<=>(const Truncation& a, const Truncation& b);
  friend bool operator==(const Truncation& a, const Truncation& b);
};

Truncation min(const Truncation& a, const Truncation& b);

/// Bound for a sum x + y where x lies beyond a and y beyond b.
Truncation sum_bound(const Truncation& a, const Truncation& b);

std::string to_string(const Truncation& t);

}  // namespace vdf
