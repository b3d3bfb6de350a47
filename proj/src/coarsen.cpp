#include "vdf/coarsen.hpp"

#include "vdf/errors.hpp"
#include "vdf/sampling.hpp"

namespace vdf {

namespace {

// Residue of a logder expansion given over the base field; nullopt if it is not in O-dot.
std::optional<LogderSpec> residue_spec(const LogderSpec& s, std::size_t k) {
  LogderSpec out;
  for (const auto& [v, c] : s.terms) {
    int sign = v.prefix(k).sign();
    if (sign < 0) return std::nullopt;
    if (sign == 0) out.terms.emplace(v.suffix(k), c);
  }
  if (s.tau.at) {
    int sign = s.tau.at->prefix(k).sign();
    if (sign < 0) return std::nullopt;
    if (sign == 0) out.tau = {s.tau.at->suffix(k), s.tau.open};
  }
  return out;
}

}  // namespace

Coarsening coarsen(const FieldPtr& base, std::size_t k) {
  const std::size_t n = base->rank();
  if (k > n) throw ContractError("prefix length exceeds rank");
  if (k == n) throw ContractError("coarsening by the trivial subgroup leaves no residue generators");
  std::vector<FieldInstance::Generator> gens;
  bool all_zero = true;
  for (std::size_t i = k; i < n; ++i) {
    const auto& g = base->generator(i);
    FieldInstance::Generator h{g.name, g.value.suffix(k), std::nullopt};
    if (g.logder) {
      auto r = residue_spec(*g.logder, k);
      if (!r) throw ContractError("logarithmic derivative of '" + g.name + "' is not in the coarse valuation ring");
      if (!r->terms.empty() || r->tau.is_finite()) all_zero = false;
      h.logder = std::move(r);
    } else {
      all_zero = false;
    }
    gens.push_back(std::move(h));
  }
  std::optional<Cut> cut;
  if (all_zero) {
    cut = Cut::all(n - k);
  } else if (const auto& bc = base->declared_gamma_der(); bc && bc->kind() == Cut::Kind::prefix && bc->depth() > k) {
    cut = Cut::prefix(n - k, bc->bound().suffix(k), bc->inclusive());
  }
  std::string name = base->name() + "/res" + std::to_string(k);
  auto make = [&](std::optional<Cut> c) {
    return std::make_shared<const FieldInstance>(name, gens, std::nullopt, std::move(c));
  };
  FieldPtr res = make(cut);
  if (cut && cut->kind() != Cut::Kind::all) {
    // The suffix of the base cut is only a candidate; keep it if it survives sampling.
    if (validate_gamma_der(res, *cut, 100, 0xc0a75eULL).discrepancies != 0) res = make(std::nullopt);
  }
  return Coarsening{base, ConvexSubgroup{n, k}, std::move(res)};
}

GroupElement coarse_val(const Series& f, const ConvexSubgroup& delta) {
  auto v = f.valuation();
  if (!v) throw ContractError("coarse valuation of zero");
  return quotient_map(*v, delta);
}

Series residue(const Series& f, const Coarsening& c) {
  if (f.field() != c.base) throw ContractError("series is not over the coarsened field");
  const std::size_t k = c.delta.prefix_len;
  Truncation lb = f.lower_bound();
  if (lb.at && lb.at->prefix(k).sign() < 0)
    throw ContractError("residue of an element outside the coarse valuation ring");
  Series::TermMap terms;
  for (const auto& [v, coef] : f.terms())
    if (v.prefix(k).is_zero()) terms.emplace(v.suffix(k), coef);
  Truncation tau;
  if (f.truncation().at && f.truncation().at->prefix(k).is_zero())
    tau = {f.truncation().at->suffix(k), f.truncation().open};
  return Series::from_terms(c.residue, std::move(terms), tau);
}

GroupElement lift_val(const GroupElement& dotted, const GroupElement& delta_part) {
  return dotted.concat(delta_part);
}

GroupElement unit_part_valuation(const Series& f, const Coarsening& c) {
  const std::size_t n = c.base->rank();
  const std::size_t k = c.delta.prefix_len;
  GroupElement dv = coarse_val(f, c.delta);
  GroupElement d = dv.concat(GroupElement::zero(n - k));
  Series u = f.shifted(-d);
  return residue(u, c).val();
}

Cut projected_gamma_der(const Coarsening& c) {
  const Cut& g = gamma_der(c.base);
  const std::size_t k = c.delta.prefix_len;
  if (k == 0) return Cut::all(0);
  switch (g.kind()) {
    case Cut::Kind::empty:
      return Cut::empty(k);
    case Cut::Kind::all:
      return Cut::all(k);
    case Cut::Kind::prefix:
      break;
  }
  if (g.depth() <= k) return Cut::prefix(k, g.bound(), g.inclusive());
  // Elements with projection equal to the bound's prefix exist in the cut.
  return Cut::prefix(k, g.bound().prefix(k), true);
}

CoarseCheck check_projection_inclusion(const Coarsening& c, std::size_t samples, std::uint64_t seed) {
  const std::size_t n = c.base->rank();
  const std::size_t k = c.delta.prefix_len;
  Cut pc = projected_gamma_der(c);
  Sampler s(seed);
  CoarseCheck out;
  std::vector<GroupElement> gammas;
  for (std::size_t i = 0; i < samples; ++i) {
    if (pc.kind() == Cut::Kind::all) {
      gammas.push_back(s.element(k));
      continue;
    }
    GroupElement b = pc.bound();
    GroupElement g = (pc.inclusive() && s.coin()) ? b : b - s.small_positive(pc.depth());
    for (std::size_t j = g.rank(); j < k; ++j) g = g.inserted(j, s.rational(20, 3));
    gammas.push_back(g);
  }
  for (std::size_t i = 0; i < samples; ++i) {
    GroupElement v;
    do v = s.positive_element(n);
    while (v.prefix(k).sign() <= 0);
    Series d = Series::with_value(c.base, v).derive();
    ++out.checked;
    if (d.is_zero()) continue;
    GroupElement dv = quotient_map(d.val(), c.delta);
    for (const auto& g : gammas)
      if (!(dv > g)) {
        ++out.failures;
        break;
      }
  }
  return out;
}

}  // namespace vdf
