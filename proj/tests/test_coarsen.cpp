#include <doctest.h>

#include "support.hpp"
#include "vdf/coarsen.hpp"
#include "vdf/errors.hpp"
#include "vdf/expr.hpp"
#include "vdf/newton.hpp"

using namespace vdf;

namespace {

Series S(const char* text, const FieldPtr& f) { return parse_series(text, f); }

}  // namespace

TEST_CASE("coarse valuation and residue examples") {
  auto f = laurent_tddt_coarse();
  Coarsening c = coarsen(f, 1);
  CHECK(c.dotted_rank() == 1);
  CHECK(coarse_val(S("s*t^2", f), c.delta) == GroupElement{2});
  CHECK(coarse_val(S("s^-3", f), c.delta) == GroupElement{0});
  CHECK(residue(S("2*s + t", f), c) == S("2*s", c.residue));
  CHECK(residue(S("t", f), c).is_zero());
  CHECK_THROWS_AS(residue(S("t^-1", f), c), ContractError);
  CHECK(lift_val({2}, {-1}) == GroupElement{2, -1});
  Series g = S("s^-1*t^2", f);
  CHECK(lift_val(coarse_val(g, c.delta), unit_part_valuation(g, c)) == GroupElement{2, -1});
}

TEST_CASE("residue field of the coarse Laurent instance has trivial derivation") {
  Coarsening c = coarsen(laurent_tddt_coarse(), 1);
  CHECK(c.residue->rank() == 1);
  CHECK(gamma_der(c.residue).kind() == Cut::Kind::all);
  CHECK(S("s^3", c.residue).derive().is_zero());
}

TEST_CASE("lift_val round trip") {
  Sampler s(51);
  for (const auto& [f, k] : std::vector<std::pair<FieldPtr, std::size_t>>{
           {laurent_tddt_coarse(), 1}, {transseries_fragment(3), 1}, {transseries_fragment(3), 3}}) {
    Coarsening c = coarsen(f, k);
    for (int t = 0; t < 100; ++t) {
      Series a = s.series(f, 3);
      CHECK(lift_val(coarse_val(a, c.delta), unit_part_valuation(a, c)) == a.val());
    }
  }
}

TEST_CASE("residue is a ring morphism on the coarse valuation ring") {
  Sampler s(52);
  auto f = laurent_tddt_coarse();
  Coarsening c = coarsen(f, 1);
  for (int t = 0; t < 100; ++t) {
    Series a = s.monomial(f, {0, s.rational()}) + s.small_series(f);
    Series b = s.monomial(f, {0, s.rational()}) + s.small_series(f);
    CHECK(residue(a * b, c) == residue(a, c) * residue(b, c));
    CHECK(residue(a + b, c) == residue(a, c) + residue(b, c));
    CHECK(residue(a.derive(), c) == residue(a, c).derive());
  }
}

TEST_CASE("smallness transfers to the coarsening") {
  Sampler s(53);
  for (const auto& [f, k] : std::vector<std::pair<FieldPtr, std::size_t>>{
           {laurent_tddt_coarse(), 1}, {transseries_fragment(4), 1}, {transseries_fragment(4), 2}}) {
    ConvexSubgroup delta{f->rank(), k};
    int checked = 0;
    while (checked < 200) {
      Series a = s.series(f, 3);
      if (coarse_val(a, delta).sign() <= 0) continue;
      ++checked;
      Series d = a.derive();
      if (!d.is_zero()) CHECK(coarse_val(d, delta).sign() > 0);
    }
  }
}

TEST_CASE("derivatives of the coarse valuation ring lie above the cut") {
  Sampler s(54);
  auto f = laurent_tddt_coarse();
  ConvexSubgroup delta = s_der(f);
  REQUIRE(delta.prefix_len == 1);
  const Cut& cut = gamma_der(f);
  std::vector<GroupElement> gammas;
  while (gammas.size() < 100) {
    Rational lead = s.rational(3, 2);
    GroupElement g{lead > 0 ? Rational(-lead) : lead, s.rational(40, 1)};
    REQUIRE(cut.contains(g));
    gammas.push_back(g);
  }
  for (int t = 0; t < 200; ++t) {
    Series a = s.monomial(f, {0, s.rational()}).scaled(s.nonzero_rational()) + s.small_series(f);
    REQUIRE(coarse_val(a, delta).sign() >= 0);
    Series d = a.derive();
    if (d.is_zero()) continue;
    for (const auto& g : gammas) CHECK(d.val() > g);
  }
}

TEST_CASE("the coarsened cut has trivial stabilizer") {
  Coarsening c = coarsen(laurent_tddt_coarse(), 1);
  Cut pc = projected_gamma_der(c);
  CHECK(pc == Cut::prefix(1, {0}, true));
  CHECK(cut_stabilizer(pc).is_trivial());
}

TEST_CASE("projection of the cut lands in the coarse cut") {
  for (const auto& [f, k] : std::vector<std::pair<FieldPtr, std::size_t>>{
           {laurent_tddt_coarse(), 1}, {transseries_fragment(3), 1}, {transseries_fragment(3), 2}}) {
    Coarsening c = coarsen(f, k);
    CoarseCheck r = check_projection_inclusion(c, 200, 9);
    CHECK(r.checked == 200);
    CHECK(r.failures == 0);
  }
}

TEST_CASE("coarsening contracts") {
  CHECK_THROWS_AS(coarsen(laurent_ddt(), 1), ContractError);
  CHECK_THROWS_AS(coarsen(laurent_ddt(), 2), ContractError);
  Coarsening m = coarsen(transseries_fragment(6), 1);
  CHECK(m.residue->rank() == 7);
  CHECK(gamma_der(m.residue).kind() == Cut::Kind::prefix);
}
