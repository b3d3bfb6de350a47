#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "vdf/diffpoly.hpp"
#include "vdf/series.hpp"

namespace vdf {

/// sum_{n=0}^{N} (l_0 ... l_n)^-1 over a field with generators l0..lN, with an
/// open truncation at v((l_0 ... l_N)^-1): the omitted tail lies strictly above.
Series lambda_series(const FieldPtr& field, std::size_t depth);
Series lambda_series(std::size_t depth);  // over transseries_fragment(depth)

/// v(m^dagger) for the monomial m of value gamma != 0.
GroupElement psi(const FieldPtr& field, const GroupElement& gamma);

/// Single term d*n with n != 1 and (d*n)' ~ f. Throws IntegrationGap when no
/// monomial of the field qualifies.
Series asym_integrate(const Series& f);

/// a0 + a1 d
struct LinearOperator {
  Series a0;
  Series a1;

  Series apply(const Series& y) const;
  /// a0 Y + a1 Y' - rhs
  DiffPoly as_diffpoly(const Series& rhs) const;
};

/// d - lambda and d + (1 - lambda) over a fragment of the given depth.
LinearOperator operator_A(const FieldPtr& field, std::size_t depth);
LinearOperator operator_B(const FieldPtr& field, std::size_t depth);

/// Single term h with op(h) ~ z (the candidate monomials are derived from the
/// valuations of a0, a1 and the generator logarithmic derivatives).
Series asymptotic_preimage(const LinearOperator& op, const Series& z);

enum class Termination { reached_tau, max_iter, integration_gap };
std::string to_string(Termination t);

struct SolveTrace {
  std::vector<Series> iterates;               // y_1, y_2, ...
  std::vector<GroupElement> residual_values;  // v(z_0), v(z_1), ...
  Termination termination = Termination::max_iter;
  std::string gap_message;
  std::size_t iterations() const { return iterates.size(); }
};

struct SolveResult {
  Series y;
  Series residual;  // op(y) - g, truncated at tau
  SolveTrace trace;
};

/// y <- y - h with op(h) ~ z, z = op(y) - g, starting from y = 0. Residual
/// valuations must strictly increase (NonDecreasingResidual otherwise).
SolveResult solve_linear(const LinearOperator& op, const Series& g, const GroupElement& tau,
                         std::size_t max_iter);

struct DemoEntry {
  Rational c;
  SolveResult solve;
  Series difference;           // y_c - y_0
  Series difference_residual;  // A(y_c - y_0) - c
  std::optional<SolveResult> constant_part;  // attempt at A(u) = c
};

struct DemoReport {
  std::size_t depth;
  GroupElement tau;
  std::vector<DemoEntry> entries;
};

/// Solves A(y) = e^x + c for each c over the depth-N transseries fragment.
DemoReport demo_nonuniqueness(std::size_t depth, const std::vector<Rational>& c_list,
                              const GroupElement& tau, std::size_t max_iter = 64);

struct BllReport {
  std::size_t depth;
  GroupElement tau;  // in the log fragment
  SolveResult b_solve;
  Truncation b_residual;  // lower bound of v(B(y) - 1)
  Truncation a_residual;  // lower bound of v(A(y e^x) - e^x)
  GroupElement a_required;
  bool pass;
};

/// v((l_0 ... l_{N-1})^-1) in the log fragment of depth N.
GroupElement default_bll_tau(std::size_t depth);

BllReport check_bll(std::size_t depth, const GroupElement& tau, std::size_t max_iter = 64);

}  // namespace vdf
