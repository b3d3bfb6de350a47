#pragma once

// Shared generators and independent oracles for the test suites.

#include <vector>

#include "vdf/diffpoly.hpp"
#include "vdf/field.hpp"
#include "vdf/fkernel.hpp"
#include "vdf/sampling.hpp"
#include "vdf/series.hpp"
#include "vdf/valgroup.hpp"

namespace vdf::test {

inline bool same_terms(const DiffPoly& a, const DiffPoly& b) {
  if (a.terms().size() != b.terms().size()) return false;
  for (const auto& [i, c] : a.terms()) {
    auto it = b.terms().find(i);
    if (it == b.terms().end() || !(it->second.terms() == c.terms())) return false;
  }
  return true;
}

/// Coefficient-wise lexicographic comparison written out by hand.
inline int lex_oracle(const GroupElement& a, const GroupElement& b) {
  for (std::size_t i = 0; i < a.rank(); ++i) {
    if (a[i] < b[i]) return -1;
    if (a[i] > b[i]) return 1;
  }
  return 0;
}

/// Random differential polynomial with monomial coefficients.
inline DiffPoly random_poly(Sampler& s, const Derivation& d, std::size_t max_order, unsigned max_degree,
                            std::size_t max_terms = 4, long val_bound = 3) {
  DiffPoly p(d);
  std::size_t n = static_cast<std::size_t>(s.integer(1, static_cast<long>(max_terms)));
  while (p.is_zero()) {
    for (std::size_t t = 0; t < n; ++t) {
      MultiIndex i(max_order + 1, 0);
      unsigned deg = static_cast<unsigned>(s.integer(0, max_degree));
      for (unsigned k = 0; k < deg; ++k) ++i[static_cast<std::size_t>(s.integer(0, static_cast<long>(max_order)))];
      Series c = s.monomial(d.field, s.element(d.field->rank(), val_bound, 2)).scaled(s.nonzero_rational(4, 3));
      p += DiffPoly::monomial(d, trimmed(i), c);
    }
  }
  return p;
}

/// P^phi by pushing D = phi * delta through each Y^(n): D(c delta^k Y) =
/// D(c) delta^k Y + c phi delta^(k+1) Y, then substituting into P.
// c m (1 + d n) with v(n) >= 1 in the leading coordinate, so truncated inverses
// keep their unknown tail far above the leading term.
inline Series random_unit_binomial(Sampler& s, const FieldPtr& f) {
  GroupElement w = s.element(f->rank());
  w[0] = abs(w[0]) + 1;
  return Series::with_value(f, s.element(f->rank()), s.nonzero_rational()) *
         (Series::constant(f, 1) + Series::with_value(f, w, s.nonzero_rational()));
}

inline DiffPoly chain_rule_conj(const DiffPoly& p, const Series& phi) {
  const Derivation& d = p.derivation();
  Derivation dc = d.conjugated(phi);
  std::size_t r = p.order();
  std::vector<std::vector<Series>> expand;  // expand[n][k]
  expand.push_back({Series::constant(d.field, 1)});
  for (std::size_t n = 1; n <= r; ++n) {
    const auto& prev = expand.back();
    std::vector<Series> next(prev.size() + 1, Series(d.field));
    for (std::size_t k = 0; k < prev.size(); ++k) {
      next[k] += d.apply(prev[k]);
      next[k + 1] += prev[k] * phi;
    }
    expand.push_back(std::move(next));
  }
  std::vector<DiffPoly> images;
  for (std::size_t n = 0; n <= r; ++n) {
    DiffPoly img(dc);
    for (std::size_t k = 0; k < expand[n].size(); ++k)
      if (!expand[n][k].is_zero()) img += DiffPoly::y(dc, k).scaled(expand[n][k]);
    images.push_back(std::move(img));
  }
  DiffPoly out(dc);
  for (const auto& [i, c] : p.terms()) {
    DiffPoly term = DiffPoly::constant(dc, c);
    for (std::size_t j = 0; j < i.size(); ++j)
      for (unsigned e = 0; e < i[j]; ++e) term = term * images[j];
    out += term;
  }
  return out;
}

/// Smallest prefix length k such that the cut is invariant under translation by
/// elements with k leading zeros, judged on sample points around the bound.
inline std::size_t brute_stabilizer(const Cut& c, Sampler& s, std::size_t samples = 200) {
  std::size_t n = c.rank();
  for (std::size_t k = 0; k <= n; ++k) {
    bool invariant = true;
    for (std::size_t t = 0; t < samples && invariant; ++t) {
      GroupElement g = s.element(n);
      if (c.kind() == Cut::Kind::prefix && s.coin()) {
        std::vector<Rational> coords(n, 0);
        for (std::size_t i = 0; i < c.depth(); ++i) coords[i] = c.bound()[i];
        for (std::size_t i = c.depth(); i < n; ++i) coords[i] = s.rational();
        g = GroupElement(coords);
      }
      std::vector<Rational> dc(n, 0);
      for (std::size_t i = k; i < n; ++i) dc[i] = s.rational(50, 3);
      GroupElement delta(dc);
      if (c.contains(g) != c.contains(g + delta)) invariant = false;
    }
    if (invariant) return k;
  }
  return n;
}

/// Infinitesimal monomial values used to probe smallness of phi^-1 D.
inline std::vector<GroupElement> smallness_probes(std::size_t rank, Sampler& s, std::size_t extra = 40) {
  std::vector<GroupElement> out;
  for (std::size_t i = 0; i < rank; ++i)
    for (int j = 0; j <= 40; j += 4) {
      Rational eps(1, 1);
      eps /= Rational(Integer(1) << j);
      out.push_back(GroupElement::unit(rank, i, eps));
      std::vector<Rational> c(rank, 0);
      c[i] = eps;
      for (std::size_t m = i + 1; m < rank; ++m) c[m] = -Rational(1 << (j / 4 + 1));
      out.push_back(GroupElement(c));
    }
  for (std::size_t t = 0; t < extra; ++t) out.push_back(s.small_positive(rank));
  return out;
}

/// Membership in the cut of the derivation: gamma is inside when
/// v(m') > gamma for every probe m < 1 with m' != 0.
inline bool derivation_small_at(const FieldPtr& f, const GroupElement& gamma, const std::vector<GroupElement>& probes) {
  for (const auto& p : probes) {
    Series m = Series::with_value(f, p);
    Series dm = m.derive();
    if (dm.is_zero()) continue;
    if (!(dm.val() > gamma)) return false;
  }
  return true;
}

/// Derivative of e^(r x) l_0^(r_0) ... l_N^(r_N) from the three monomial rules.
inline Series monomial_rule_derivative(const FieldPtr& f, const Monomial& m) {
  std::size_t depth = f->rank() - 2;
  Series mono = Series::monomial(f, m);
  Series factor = Series::constant(f, m[0]);
  Series chain = Series::constant(f, 1);
  for (std::size_t k = 0; k <= depth; ++k) {
    chain = chain * Series::generator(f, "l" + std::to_string(k), -1);
    factor += chain.scaled(m[k + 1]);
  }
  return mono * factor;
}

}  // namespace vdf::test
