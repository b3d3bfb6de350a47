#include "vdf/hsolve.hpp"

#include <set>

#include "vdf/errors.hpp"

namespace vdf {

namespace {

std::size_t gen_index(const FieldPtr& f, const std::string& name) {
  auto i = f->index_of(name);
  if (!i) throw ContractError("field " + f->name() + " has no generator '" + name + "'");
  return *i;
}

Series lambda_partial(const FieldPtr& field, std::size_t depth) {
  Monomial m(field->rank());
  Series out(field);
  for (std::size_t n = 0; n <= depth; ++n) {
    m[gen_index(field, "l" + std::to_string(n))] = -1;
    out += Series::monomial(field, m);
  }
  return out;
}

// Candidate valuation offsets w for which psi(gamma) = w may hold.
std::set<GroupElement> logder_values(const FieldPtr& f) {
  std::set<GroupElement> out{GroupElement::zero(f->rank())};
  for (const auto& g : f->generators())
    if (g.logder)
      for (const auto& [v, c] : g.logder->terms) out.insert(v);
  return out;
}

}  // namespace

Series lambda_series(const FieldPtr& field, std::size_t depth) {
  Series s = lambda_partial(field, depth);
  GroupElement mu = std::prev(s.terms().end())->first;
  return s.truncated(Truncation::open_at(mu));
}

Series lambda_series(std::size_t depth) { return lambda_series(transseries_fragment(depth), depth); }

GroupElement psi(const FieldPtr& field, const GroupElement& gamma) {
  if (gamma.is_zero()) throw ContractError("psi is undefined at 0");
  Series l = Series::with_value(field, gamma).logder();
  if (l.is_zero()) throw ContractError("psi undefined: the monomial of value " + to_string(gamma) + " is constant");
  return l.val();
}

Series asym_integrate(const Series& f) {
  if (f.is_zero()) throw ContractError("asymptotic integral of zero");
  const FieldPtr& F = f.field();
  auto [beta, c] = f.dominant();
  for (const auto& w : logder_values(F)) {
    GroupElement gamma = beta - w;
    if (gamma.is_zero()) continue;
    Series d = Series::with_value(F, gamma).derive();
    if (d.empty() || d.val() != beta) continue;
    Series out = Series::with_value(F, gamma, c / d.coefficient(beta));
    auto [bv, bc] = out.derive().dominant();
    if (bv != beta || bc != c) throw ContractError("internal: asymptotic integral postcondition failed");
    return out;
  }
  throw IntegrationGap("no monomial n of " + F->name() + " has n' of valuation " + to_string(beta));
}

Series LinearOperator::apply(const Series& y) const { return a0 * y + a1 * y.derive(); }

DiffPoly LinearOperator::as_diffpoly(const Series& rhs) const {
  Derivation d(a0.field());
  return DiffPoly::y(d, 0).scaled(a0) + DiffPoly::y(d, 1).scaled(a1) - DiffPoly::constant(d, rhs);
}

LinearOperator operator_A(const FieldPtr& field, std::size_t depth) {
  return {-lambda_series(field, depth), Series::constant(field, 1)};
}

LinearOperator operator_B(const FieldPtr& field, std::size_t depth) {
  return {Series::constant(field, 1) - lambda_series(field, depth), Series::constant(field, 1)};
}

Series asymptotic_preimage(const LinearOperator& op, const Series& z) {
  const FieldPtr& F = z.field();
  auto [beta, c] = z.dominant();
  std::vector<GroupElement> candidates;
  if (!op.a1.is_zero() && !op.a1.empty())
    for (const auto& w : logder_values(F)) candidates.push_back(beta - op.a1.val() - w);
  if (!op.a0.is_zero() && !op.a0.empty()) candidates.push_back(beta - op.a0.val());
  for (const auto& gamma : candidates) {
    Series image = op.apply(Series::with_value(F, gamma));
    if (image.empty() || image.val() != beta) continue;
    return Series::with_value(F, gamma, c / image.coefficient(beta));
  }
  throw IntegrationGap("no monomial h of " + F->name() + " has op(h) of valuation " + to_string(beta));
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::reached_tau:
      return "reached_tau";
    case Termination::max_iter:
      return "max_iter";
    case Termination::integration_gap:
      return "integration_gap";
  }
  return "";
}

SolveResult solve_linear(const LinearOperator& op, const Series& g, const GroupElement& tau,
                         std::size_t max_iter) {
  const FieldPtr& F = g.field();
  const Truncation cut = Truncation::closed(tau);
  Series y(F);
  Series z = (op.apply(y) - g).truncated(cut);
  SolveTrace trace;
  for (;;) {
    if (z.empty()) {
      if (!z.truncation().implies_at_least(tau))
        throw IndeterminateValuation("residual known only modulo " + to_string(z.truncation()) +
                                     ", below the target " + to_string(tau));
      trace.termination = Termination::reached_tau;
      break;
    }
    GroupElement vz = z.val();
    if (!trace.residual_values.empty() && !(vz > trace.residual_values.back()))
      throw NonDecreasingResidual("residual valuation " + to_string(vz) + " after " +
                                  to_string(trace.residual_values.back()));
    trace.residual_values.push_back(vz);
    if (trace.iterations() >= max_iter) {
      trace.termination = Termination::max_iter;
      break;
    }
    Series h(F);
    try {
      h = asymptotic_preimage(op, z);
    } catch (const IntegrationGap& e) {
      trace.termination = Termination::integration_gap;
      trace.gap_message = e.what();
      break;
    }
    y -= h;
    trace.iterates.push_back(y);
    z = (op.apply(y) - g).truncated(cut);
  }
  return SolveResult{y, z, std::move(trace)};
}

DemoReport demo_nonuniqueness(std::size_t depth, const std::vector<Rational>& c_list,
                              const GroupElement& tau, std::size_t max_iter) {
  if (depth < 3) throw ContractError("demo needs depth >= 3");
  FieldPtr M = transseries_fragment(depth);
  LinearOperator A = operator_A(M, depth);
  Series ex = Series::generator(M, "e_x");
  DemoReport rep{depth, tau, {}};
  std::optional<Series> y0;
  GroupElement const_tau = default_bll_tau(depth).inserted(0);
  for (const auto& c : c_list) {
    Series rhs = ex + Series::constant(M, c);
    SolveResult r = solve_linear(A, rhs, tau, max_iter);
    if (!y0) y0 = c == 0 ? r.y : solve_linear(A, ex, tau, max_iter).y;
    Series diff = r.y - *y0;
    Series diff_res = A.apply(diff) - Series::constant(M, c);
    DemoEntry e{c, r, diff, diff_res, std::nullopt};
    if (c != 0) e.constant_part = solve_linear(A, Series::constant(M, c), const_tau, max_iter);
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

GroupElement default_bll_tau(std::size_t depth) {
  std::vector<Rational> v(depth + 1, 1);
  v[depth] = 0;
  return GroupElement(std::move(v));
}

BllReport check_bll(std::size_t depth, const GroupElement& tau, std::size_t max_iter) {
  if (depth < 3) throw ContractError("check_bll needs depth >= 3");
  FieldPtr L = log_fragment(depth);
  FieldPtr M = transseries_fragment(depth);
  if (tau.rank() != L->rank()) throw RankMismatch("tau must live in the value group of the log fragment");
  SolveResult b = solve_linear(operator_B(L, depth), Series::constant(L, 1), tau, max_iter);
  Series ex = Series::generator(M, "e_x");
  Series r = operator_A(M, depth).apply(b.y.transported(M) * ex) - ex;
  GroupElement required = tau.inserted(0) + ex.val();
  BllReport rep{depth, tau, b, b.residual.lower_bound(), r.lower_bound(), required, false};
  rep.pass = r.lower_bound().implies_at_least(required);
  return rep;
}

}  // namespace vdf
