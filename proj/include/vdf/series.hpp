#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "vdf/field.hpp"
#include "vdf/rational.hpp"
#include "vdf/truncation.hpp"

namespace vdf {

/// Limits on the geometric expansion in Series::invert; the result carries an
/// honest truncation when either is hit.
inline constexpr std::size_t kInvertTermCap = 24;
inline constexpr std::size_t kInvertPowerSizeCap = 256;

/// Truncated grid-based series: a finite set of terms c * m (keyed by the value
/// of m, which determines m) plus a truncation bound for the unknown tail.
class Series {
 public:
  using TermMap = std::map<GroupElement, Rational>;

  explicit Series(FieldPtr field);  // the exact zero

  static Series unknown(FieldPtr field, Truncation tau);
  static Series constant(FieldPtr field, const Rational& c);
  static Series monomial(FieldPtr field, const Monomial& m, const Rational& c = 1);
  static Series with_value(FieldPtr field, const GroupElement& v, const Rational& c = 1);
  static Series generator(FieldPtr field, const std::string& name, const Rational& exponent = 1);
  static Series from_terms(FieldPtr field, TermMap terms, Truncation tau = {});

  const FieldPtr& field() const { return field_; }
  const TermMap& terms() const { return terms_; }
  const Truncation& truncation() const { return tau_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  bool is_exact() const { return !tau_.is_finite(); }
  bool is_zero() const { return terms_.empty() && !tau_.is_finite(); }
  bool is_single_term() const { return terms_.size() == 1 && !tau_.is_finite(); }

  /// nullopt for the exact zero; throws IndeterminateValuation when no term is known.
  std::optional<GroupElement> valuation() const;
  /// Valuation of a series known to be nonzero.
  GroupElement val() const;
  /// Largest bound b with v(f) >= b guaranteed (closed at v(f) when a term is known).
  Truncation lower_bound() const;
  std::pair<GroupElement, Rational> dominant() const;
  Rational coefficient(const GroupElement& v) const;

  /// Lowers the truncation to min(current, tau), dropping terms beyond it.
  Series truncated(const Truncation& tau) const;

  Series operator-() const;
  Series& operator+=(const Series& g);
  Series& operator-=(const Series& g);
  friend Series operator+(Series f, const Series& g) { return f += g; }
  friend Series operator-(Series f, const Series& g) { return f -= g; }
  friend Series operator*(const Series& f, const Series& g);
  Series scaled(const Rational& c) const;
  /// Multiplies by the exact monomial of value v.
  Series shifted(const GroupElement& v) const;
  Series pow(long n) const;

  Series derive() const;
  /// f * invert(f) = 1 modulo target (or to the available precision if lower).
  Series invert(const Truncation& target) const;
  Series logder(const Truncation& target = {}) const;

  /// Re-expresses the series over another field by generator name.
  Series transported(const FieldPtr& target) const;

  /// Terms in ascending valuation; e.g. "t^-1 + 3/2*t*s^(1/2)".
  std::string to_string() const;

  friend bool operator==(const Series& a, const Series& b);

 private:
  void check_same_field(const Series& g) const;
  void prune();

  FieldPtr field_;
  TermMap terms_;
  Truncation tau_;
};

/// Difference of the kept terms of two series is zero below both truncations.
bool agree_on_kept_terms(const Series& a, const Series& b);

std::string monomial_to_string(const FieldInstance& field, const Monomial& m);

}  // namespace vdf
