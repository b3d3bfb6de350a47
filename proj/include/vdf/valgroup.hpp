#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "vdf/rational.hpp"

namespace vdf {

/// Element of the lexicographically ordered group Q^n. Coordinate 0 is the
/// most significant.
class GroupElement {
 public:
  GroupElement() = default;
  explicit GroupElement(std::vector<Rational> coords);
  GroupElement(std::initializer_list<Rational> coords);

  static GroupElement zero(std::size_t rank);
  static GroupElement unit(std::size_t rank, std::size_t index, const Rational& scale = 1);

  std::size_t rank() const { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  Rational& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<Rational>& coords() const { return coords_; }

  bool is_zero() const;
  /// -1, 0 or +1 according to comparison with zero.
  int sign() const;
  GroupElement abs() const { return sign() < 0 ? -*this : *this; }

  GroupElement& operator+=(const GroupElement& other);
  GroupElement& operator-=(const GroupElement& other);
  GroupElement& operator*=(const Rational& scale);
  GroupElement& operator/=(const Rational& scale);

  friend GroupElement operator+(GroupElement a, const GroupElement& b) { return a += b; }
  friend GroupElement operator-(GroupElement a, const GroupElement& b) { return a -= b; }
  friend GroupElement operator*(GroupElement a, const Rational& s) { return a *= s; }
  friend GroupElement operator*(const Rational& s, GroupElement a) { return a *= s; }
  friend GroupElement operator/(GroupElement a, const Rational& s) { return a /= s; }
  GroupElement operator-() const;

  /// Throws RankMismatch for elements of different rank.
  friend std::strong_ordering operator<=>(const GroupElement& a, const GroupElement& b);
  friend bool operator==(const GroupElement& a, const GroupElement& b);

  /// First k coordinates.
  GroupElement prefix(std::size_t k) const;
  /// Coordinates k..n-1.
  GroupElement suffix(std::size_t k) const;
  /// Inserts a coordinate before position pos (pos == rank() appends).
  GroupElement inserted(std::size_t pos, const Rational& value = 0) const;
  GroupElement concat(const GroupElement& tail) const;

  std::vector<std::string> to_strings() const;

 private:
  std::vector<Rational> coords_;
};

std::strong_ordering lex_cmp(const GroupElement& a, const GroupElement& b);

std::string to_string(const GroupElement& g);

/// Convex subgroup {gamma : gamma_0 = ... = gamma_{k-1} = 0} of Q^n.
struct ConvexSubgroup {
  std::size_t rank = 0;
  std::size_t prefix_len = 0;

  bool contains(const GroupElement& g) const;
  bool is_trivial() const { return prefix_len == rank; }
  friend bool operator==(const ConvexSubgroup&, const ConvexSubgroup&) = default;
};

/// Projection Q^n -> Q^n / Delta = Q^k.
GroupElement quotient_map(const GroupElement& g, const ConvexSubgroup& delta);

enum class Side { below, above };

/// Appends a new least-significant coordinate -1 (below) or +1 (above).
GroupElement with_infinitesimal(const GroupElement& g, Side side);

/// Downward-closed subset of Q^n. A prefix cut of depth k with bound b is
/// {gamma : proj_k(gamma) < b} together with {proj_k(gamma) = b} when inclusive.
class Cut {
 public:
  enum class Kind { empty, all, prefix };

  static Cut empty(std::size_t rank);
  static Cut all(std::size_t rank);
  static Cut prefix(std::size_t rank, GroupElement bound, bool inclusive);

  Kind kind() const { return kind_; }
  std::size_t rank() const { return rank_; }
  std::size_t depth() const { return bound_.rank(); }
  const GroupElement& bound() const { return bound_; }
  bool inclusive() const { return inclusive_; }

  bool contains(const GroupElement& g) const;
  bool has_max() const { return kind_ == Kind::prefix && inclusive_ && depth() == rank_; }
  std::optional<GroupElement> max() const;

  /// {gamma + delta : gamma in cut}.
  Cut translated(const GroupElement& delta) const;
  /// Same membership condition read in Q^m for m >= depth (used after adjoining coordinates).
  Cut lifted(std::size_t new_rank) const;

  friend bool operator==(const Cut&, const Cut&) = default;

 private:
  Cut(Kind kind, std::size_t rank, GroupElement bound, bool inclusive)
      : kind_(kind), rank_(rank), bound_(std::move(bound)), inclusive_(inclusive) {}

  Kind kind_;
  std::size_t rank_;
  GroupElement bound_;
  bool inclusive_;
};

/// Largest convex subgroup Delta with cut + delta = cut for all delta in Delta.
ConvexSubgroup cut_stabilizer(const Cut& c);

std::string to_string(const Cut& c);

}  // namespace vdf
