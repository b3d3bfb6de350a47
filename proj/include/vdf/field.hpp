#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "vdf/rational.hpp"
#include "vdf/truncation.hpp"
#include "vdf/valgroup.hpp"

namespace vdf {

/// Exponent vector over the generators of a field instance.
using Monomial = std::vector<Rational>;

/// Finite expansion of a generator's logarithmic derivative, keyed by value.
struct LogderSpec {
  std::map<GroupElement, Rational> terms;
  Truncation tau;
};

/// Presentation of a grid-based valued differential field. Generator i has a
/// value vector whose first i coordinates vanish and whose i-th coordinate is
/// nonzero, so value -> exponent inversion is a triangular solve.
class FieldInstance {
 public:
  struct Generator {
    std::string name;
    GroupElement value;
    std::optional<LogderSpec> logder;
  };

  /// When shift is absent it is computed as the minimum valuation of the
  /// declared logarithmic derivatives. A declared shift must not exceed it.
  FieldInstance(std::string name, std::vector<Generator> generators,
                std::optional<GroupElement> shift = std::nullopt,
                std::optional<Cut> gamma_der = std::nullopt);

  const std::string& name() const { return name_; }
  std::size_t rank() const { return rank_; }
  const std::vector<Generator>& generators() const { return gens_; }
  const Generator& generator(std::size_t i) const { return gens_.at(i); }
  std::optional<std::size_t> index_of(const std::string& name) const;

  GroupElement value_of(const Monomial& m) const;
  Monomial monomial_of(const GroupElement& v) const;

  /// v(f') >= v(f) + shift for every nonzero f.
  const GroupElement& shift() const { return shift_; }
  const std::optional<Cut>& declared_gamma_der() const { return gamma_der_; }

  /// Runs compute once per instance and replays its result (or exception).
  const Cut& cached_cut(const std::function<Cut()>& compute) const;

 private:
  std::string name_;
  std::size_t rank_;
  std::vector<Generator> gens_;
  GroupElement shift_;
  std::optional<Cut> gamma_der_;

  mutable std::once_flag cut_once_;
  mutable std::optional<Cut> cut_;
  mutable std::exception_ptr cut_error_;
};

using FieldPtr = std::shared_ptr<const FieldInstance>;

/// Rational functions in t with d/dt: v(t) = 1, t' = 1.
FieldPtr laurent_ddt();
/// One generator t, v(t) = 1, with t d/dt (so t' = t).
FieldPtr laurent_tddt();
/// t d/dt on Q((s))((t)): v(t) = (1,0), v(s) = (0,1), s' = 0.
FieldPtr laurent_tddt_coarse();
/// e_x, l0..lN with v(e_x) = (-1,0,...), v(l_k) = -e_{k+1}, e_x' = e_x,
/// l_k' = l_k (l_0 ... l_k)^-1.
FieldPtr transseries_fragment(std::size_t depth);
/// Same without e_x.
FieldPtr log_fragment(std::size_t depth);

/// Looks up laurent_ddt, laurent_tddt, laurent_tddt_coarse, M<N>, L<N>.
FieldPtr builtin_field(const std::string& name);

/// Adjoins a constant generator with value e_n, infinitesimal with respect to
/// every element of the original value group.
FieldPtr with_constant_infinitesimal(const FieldPtr& base, const std::string& name = "eps");

}  // namespace vdf
