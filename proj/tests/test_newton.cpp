#include <doctest.h>

#include "support.hpp"
#include "vdf/errors.hpp"
#include "vdf/expr.hpp"
#include "vdf/newton.hpp"

using namespace vdf;

namespace {

DiffPoly P(const char* text, const FieldPtr& f) { return parse_poly(text, f); }

unsigned oracle_ddeg(const DiffPoly& p, const GroupElement& gamma) {
  return ddeg(comp_conj(p, Series::with_value(p.field(), gamma)));
}

Series partial_lambda(const FieldPtr& f, std::size_t rho) {
  Series out(f), chain = Series::constant(f, 1);
  for (std::size_t k = 0; k <= rho; ++k) {
    chain = chain * Series::generator(f, "l" + std::to_string(k), -1);
    out += chain;
  }
  return out;
}

}  // namespace

TEST_CASE("tropical_ddeg examples") {
  auto f = laurent_tddt();
  DiffPoly p = P("Y^2 + t*Y'", f);
  CHECK(tropical_ddeg(p, {Rational(-1, 2)}) == 2);
  CHECK(tropical_ddeg(p, {-2}) == 1);
  CHECK(tropical_ddeg(P("3*Y", f), {-7}) == 1);
  CHECK(breakpoints(p) == std::vector<GroupElement>{{-1}});
  CHECK(breakpoints(P("Y", f)).empty());
  CHECK_THROWS(tropical_ddeg(p, {1}));
}

TEST_CASE("tropical_ddeg agrees with ddeg of the conjugate") {
  Sampler s(41);
  int cases = 0;
  for (const auto& f : {laurent_tddt(), laurent_tddt_coarse()}) {
    Derivation d(f);
    for (int t = 0; t < 150; ++t) {
      DiffPoly p = test::random_poly(s, d, 3, 4);
      std::vector<GroupElement> gammas = breakpoints(p);
      for (int u = 0; u < 3; ++u) gammas.push_back(-s.positive_element(f->rank()));
      for (const auto& g : gammas) {
        CHECK(tropical_ddeg(p, g) == oracle_ddeg(p, g));
        ++cases;
      }
    }
  }
  CHECK(cases >= 500);
}

TEST_CASE("plateaus are constant between breakpoints") {
  Sampler s(42);
  auto f = laurent_tddt();
  Derivation d(f);
  for (int t = 0; t < 100; ++t) {
    DiffPoly p = test::random_poly(s, d, 2, 3);
    TropicalProfile prof = tropical_profile(p);
    REQUIRE(prof.plateaus.size() == prof.breakpoints.size() + 1);
    for (std::size_t m = 0; m <= prof.breakpoints.size(); ++m) {
      Rational lo = m == 0 ? prof.breakpoints.empty() ? Rational(-4) : Rational(prof.breakpoints[0][0] - 3)
                           : Rational(prof.breakpoints[m - 1][0]);
      Rational hi = m == prof.breakpoints.size() ? Rational(0) : Rational(prof.breakpoints[m][0]);
      for (int k = 1; k <= 3; ++k) {
        Rational g = lo + (hi - lo) * Rational(k, 4);
        CHECK(tropical_ddeg(p, {g}) == prof.plateaus[m]);
      }
    }
  }
}

TEST_CASE("gamma_der and s_der of the builtin fields") {
  CHECK(gamma_der(laurent_ddt()) == Cut::prefix(1, {-1}, true));
  CHECK(s_der(laurent_ddt()).prefix_len == 1);
  CHECK(gamma_der(laurent_tddt_coarse()) == Cut::prefix(2, {0}, true));
  CHECK(s_der(laurent_tddt_coarse()).prefix_len == 1);
  for (std::size_t n : {1u, 3u, 6u}) {
    auto m = transseries_fragment(n);
    std::vector<Rational> b(n + 2, 1);
    b[0] = 0;
    CHECK(gamma_der(m) == Cut::prefix(n + 2, GroupElement(b), true));
    CHECK(s_der(m).is_trivial());
  }
}

TEST_CASE("gamma_der matches the smallness oracle") {
  Sampler s(43);
  for (const auto& f : {laurent_ddt(), laurent_tddt(), laurent_tddt_coarse(), transseries_fragment(3)}) {
    const Cut& c = gamma_der(f);
    auto probes = test::smallness_probes(f->rank(), s);
    std::vector<GroupElement> gammas;
    for (int t = 0; t < 60; ++t) gammas.push_back(s.element(f->rank()));
    if (c.kind() == Cut::Kind::prefix) {
      std::vector<Rational> b(f->rank(), 0);
      for (std::size_t i = 0; i < c.depth(); ++i) b[i] = c.bound()[i];
      GroupElement edge(b);
      gammas.push_back(edge);
      for (int t = 0; t < 20; ++t) {
        gammas.push_back(edge + s.small_positive(f->rank()));
        gammas.push_back(edge - s.small_positive(f->rank()));
      }
    }
    for (const auto& g : gammas) CHECK(c.contains(g) == test::derivation_small_at(f, g, probes));
    CHECK(validate_gamma_der(f, c, 300, 7).discrepancies == 0);
  }
}

TEST_CASE("a wrong declared cut is rejected") {
  auto bad = std::make_shared<const FieldInstance>(
      "bad", std::vector<FieldInstance::Generator>{{"t", {1}, LogderSpec{{{GroupElement{-1}, 1}}, {}}}},
      std::nullopt, Cut::prefix(1, {0}, true));
  CHECK_THROWS_AS(gamma_der(bad), ValidationError);
  CHECK(validate_gamma_der(bad, Cut::prefix(1, {0}, true), 100, 3).discrepancies > 0);
}

TEST_CASE("ndeg examples") {
  auto f = laurent_ddt();
  CHECK(ndeg(P("Y^2 + t*Y'", f)) == 2);
  CHECK(ndeg_geq(P("Y'", f), {0}) == 1);
  CHECK(ndeg_prec(P("Y - t", f), parse_series("t", f)) == 0);
  CHECK(ndeg(P("Y^3 + Y'", laurent_tddt_coarse())) == 3);
}

TEST_CASE("ndeg agrees with a deep conjugation when the cut has no maximum") {
  Sampler s(44);
  auto f = laurent_tddt_coarse();
  Derivation d(f);
  for (int t = 0; t < 100; ++t) {
    DiffPoly p = test::random_poly(s, d, 2, 3, 4, 2);
    CHECK(ndeg(p) == ddeg(comp_conj(p, Series::with_value(f, {0, 1000}))));
  }
}

TEST_CASE("ndeg laws") {
  Sampler s(45);
  for (const auto& f : {laurent_ddt(), laurent_tddt(), laurent_tddt_coarse(), transseries_fragment(2)}) {
    Derivation d(f);
    for (int t = 0; t < 60; ++t) {
      DiffPoly p = test::random_poly(s, d, 2, 3), q = test::random_poly(s, d, 2, 2);
      CHECK(ndeg(p * q) == ndeg(p) + ndeg(q));
      Series phi = s.coin() ? s.monomial(f, s.element(f->rank())) : test::random_unit_binomial(s, f);
      CHECK(ndeg(comp_conj(p, phi)) == ndeg(p));
    }
  }
}

TEST_CASE("ndeg_geq is nonincreasing and consistent with mul_conj") {
  Sampler s(46);
  auto f = laurent_tddt();
  Derivation d(f);
  for (int t = 0; t < 80; ++t) {
    DiffPoly p = test::random_poly(s, d, 2, 3);
    GroupElement a = s.element(1), b = a + s.positive_element(1);
    CHECK(ndeg_geq(p, b) <= ndeg_geq(p, a));
    CHECK(ndeg_geq(p, a) == ndeg(mul_conj(p, Series::with_value(f, a))));
  }
}

TEST_CASE("additive conjugation by a bounded element keeps ndeg") {
  Sampler s(47);
  for (const auto& f : {laurent_tddt(), transseries_fragment(2)}) {
    Derivation d(f);
    for (int t = 0; t < 60; ++t) {
      DiffPoly p = test::random_poly(s, d, 2, 3);
      Series a = s.coin() ? s.small_series(f) : s.small_series(f) + Series::constant(f, s.rational());
      CHECK(ndeg(add_conj(p, a)) == ndeg(p));
    }
  }
}

TEST_CASE("ndeg under shifted centers") {
  // ndeg_{>=beta} P_{+b} <= ndeg_{>=alpha} P_{+a} when v(b - a) >= alpha and beta >= alpha
  Sampler s(48);
  auto f = laurent_tddt();
  Derivation d(f);
  for (int t = 0; t < 80; ++t) {
    DiffPoly p = test::random_poly(s, d, 2, 3);
    GroupElement alpha = s.element(1, 3, 2);
    GroupElement beta = alpha + (s.coin() ? GroupElement::zero(1) : s.positive_element(1));
    Series a = s.series(f, 2);
    Series b = a + Series::with_value(f, alpha + (s.coin() ? GroupElement::zero(1) : s.positive_element(1)));
    CHECK(ndeg_geq(add_conj(p, b), beta) <= ndeg_geq(add_conj(p, a), alpha));
  }
}

TEST_CASE("ndeg_prec is the supremum below g") {
  Sampler s(49);
  auto f = laurent_tddt();
  Derivation d(f);
  for (int t = 0; t < 60; ++t) {
    DiffPoly p = test::random_poly(s, d, 2, 3);
    GroupElement g = s.element(1);
    unsigned prec = ndeg_prec(p, Series::with_value(f, g));
    // attained just above v(g) and never exceeded further up
    CHECK(prec == ndeg_geq(p, g + GroupElement{Rational(1, 1 << 20)}));
    CHECK(prec <= ndeg_geq(p, g));
  }
}

TEST_CASE("Newton degree in a cut") {
  for (std::size_t n : {3u, 5u}) {
    auto l = log_fragment(n);
    PcSequence seq{[&](std::size_t r) { return partial_lambda(l, r); }, n + 1, 2};
    // a + Y is dominated by the constant a at every gap
    CutNdeg y = ndeg_in_cut(P("Y", l), seq);
    CHECK(y.ndeg == 0);
    Derivation d(l);
    DiffPoly q = DiffPoly::y(d) - DiffPoly::constant(d, partial_lambda(l, n));
    CutNdeg r = ndeg_in_cut(q, seq);
    CHECK(r.ndeg == 1);
    for (unsigned h : r.history) CHECK(h == 1);
  }
  auto l = log_fragment(3);
  PcSequence constant{[&](std::size_t) { return Series::constant(l, 1); }, 4, 2};
  CHECK_THROWS_AS(ndeg_in_cut(P("Y", l), constant), ContractError);
}

TEST_CASE("flexibility probe") {
  auto f = laurent_ddt();
  FlexProbe fp = flex_probe(P("Y'", f), {5}, 200, 3);
  CHECK(fp.values.size() >= 10);
  CHECK_THROWS_AS(flex_probe(P("t", f), {5}, 10, 3), ContractError);
  CHECK_THROWS_AS(flex_probe(P("Y'", f), {-1}, 10, 3), ContractError);
}
