#include "vdf/newton.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "vdf/errors.hpp"
#include "vdf/sampling.hpp"

namespace vdf {

namespace {

GroupElement embed(const GroupElement& v, std::size_t target_rank, std::size_t pos) {
  if (v.rank() == target_rank) return v;
  if (v.rank() + 1 == target_rank) return v.inserted(pos);
  throw RankMismatch("tropical point has incompatible rank");
}

unsigned argmin_degree(const std::vector<TropicalProfile::Entry>& entries, const GroupElement& gamma,
                       std::size_t pos) {
  std::optional<GroupElement> best;
  unsigned deg = 0;
  for (const auto& e : entries) {
    if (e.bound_open) continue;
    GroupElement f = embed(e.value, gamma.rank(), pos) + gamma * Rational(e.weight);
    if (!best || f < *best) {
      best = f;
      deg = e.degree;
    } else if (f == *best) {
      deg = std::max(deg, e.degree);
    }
  }
  if (!best) throw IndeterminateValuation("no coefficient has a determinate valuation");
  for (const auto& e : entries) {
    if (!e.bound_open) continue;
    GroupElement f = embed(e.value, gamma.rank(), pos) + gamma * Rational(e.weight);
    if (*e.bound_open ? f < *best : f <= *best)
      throw IndeterminateValuation("a coefficient known only above " + to_string(e.value) +
                                   " may reach the minimum");
  }
  return deg;
}

std::vector<TropicalProfile::Entry> entries_of(const DiffPoly& p) {
  if (p.is_zero()) throw ContractError("tropical data of the zero polynomial");
  std::vector<TropicalProfile::Entry> out;
  for (const auto& [i, c] : p.terms()) {
    if (!c.empty())
      out.push_back({c.val(), weight(i), degree(i), std::nullopt});
    else
      out.push_back({*c.truncation().at, weight(i), degree(i), c.truncation().open});
  }
  return out;
}

}  // namespace

std::vector<GroupElement> breakpoints(const DiffPoly& p) {
  auto entries = entries_of(p);
  std::vector<GroupElement> out;
  for (std::size_t a = 0; a < entries.size(); ++a)
    for (std::size_t b = a + 1; b < entries.size(); ++b) {
      const auto& ei = entries[a];
      const auto& ej = entries[b];
      if (ei.weight == ej.weight || ei.bound_open || ej.bound_open) continue;
      GroupElement g = (ej.value - ei.value) / (Rational(ei.weight) - Rational(ej.weight));
      if (g.sign() < 0) out.push_back(std::move(g));
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

TropicalProfile tropical_profile(const DiffPoly& p) {
  TropicalProfile prof;
  prof.entries = entries_of(p);
  prof.breakpoints = breakpoints(p);
  const std::size_t n = p.field()->rank();
  const auto& bp = prof.breakpoints;
  for (std::size_t m = 0; m <= bp.size(); ++m) {
    GroupElement probe;
    if (bp.empty())
      probe = -GroupElement::unit(n, 0);
    else if (m == 0)
      probe = bp.front() * Rational(2);
    else if (m == bp.size())
      probe = bp.back() / Rational(2);
    else
      probe = (bp[m - 1] + bp[m]) / Rational(2);
    prof.plateaus.push_back(argmin_degree(prof.entries, probe, n));
  }
  return prof;
}

unsigned tropical_ddeg(const DiffPoly& p, const GroupElement& gamma) {
  if (gamma.sign() >= 0) throw ContractError("tropical_ddeg needs gamma < 0; conjugate first");
  return argmin_degree(entries_of(p), gamma, p.field()->rank());
}

unsigned tropical_ddeg_embedded(const DiffPoly& p, const GroupElement& gamma, std::size_t pos) {
  return argmin_degree(entries_of(p), gamma, pos);
}

CutValidation validate_gamma_der(const FieldPtr& field, const Cut& cut, std::size_t samples,
                                 std::uint64_t seed) {
  CutValidation rep;
  const std::size_t n = field->rank();
  if (cut.rank() != n) throw RankMismatch("cut rank differs from field rank");
  if (cut.kind() == Cut::Kind::empty) {
    rep.discrepancies = 1;
    return rep;
  }
  Sampler s(seed);

  struct Probe {
    Truncation lb;  // lower bound of v(m')
    std::optional<GroupElement> exact;
  };
  std::vector<Probe> probes;
  auto add_probe = [&](const GroupElement& v) {
    Series d = Series::with_value(field, v).derive();
    Probe pr{d.lower_bound(), std::nullopt};
    if (!d.empty()) pr.exact = d.val();
    probes.push_back(std::move(pr));
  };
  for (std::size_t i = 0; i < n; ++i) {
    Rational eps(1);
    for (int j = 0; j <= 48; ++j, eps /= 2) add_probe(GroupElement::unit(n, i, eps));
  }
  for (std::size_t k = 0; k < samples; ++k) add_probe(s.small_positive(n));

  auto random_tail = [&](GroupElement prefix) {
    for (std::size_t i = prefix.rank(); i < n; ++i) prefix = prefix.inserted(i, s.rational(40, 3));
    return prefix;
  };

  std::vector<GroupElement> inside, outside;
  for (std::size_t k = 0; k < samples; ++k) {
    if (cut.kind() == Cut::Kind::all) {
      inside.push_back(s.element(n, 40, 3));
      continue;
    }
    const GroupElement& b = cut.bound();
    const std::size_t depth = cut.depth();
    if (cut.inclusive() && s.coin())
      inside.push_back(random_tail(b));
    else
      inside.push_back(random_tail(b - s.small_positive(depth)));
    if (!cut.inclusive() && s.coin())
      outside.push_back(random_tail(b));
    else
      outside.push_back(random_tail(b + s.small_positive(depth)));
  }

  for (const auto& g : inside) {
    if (!cut.contains(g)) throw ContractError("internal: inside sample not in cut");
    ++rep.inside_checked;
    for (const auto& pr : probes) {
      bool ok = pr.lb.is_finite() ? (*pr.lb.at > g || (pr.lb.open && *pr.lb.at == g)) : true;
      if (!ok) {
        ++rep.discrepancies;
        break;
      }
    }
  }
  for (const auto& g : outside) {
    if (cut.contains(g)) throw ContractError("internal: outside sample in cut");
    ++rep.outside_checked;
    bool witnessed = std::any_of(probes.begin(), probes.end(),
                                 [&](const Probe& pr) { return pr.exact && *pr.exact <= g; });
    if (!witnessed) ++rep.discrepancies;
  }
  return rep;
}

const Cut& gamma_der(const FieldPtr& field) {
  return field->cached_cut([&]() -> Cut {
    const auto& declared = field->declared_gamma_der();
    if (!declared) throw ContractError("field " + field->name() + " has no registered derivation cut");
    CutValidation rep = validate_gamma_der(field, *declared, 200, 0x5eedULL);
    if (rep.discrepancies != 0)
      throw ValidationError("registered derivation cut " + to_string(*declared) + " of field " +
                            field->name() + " failed sampling validation (" +
                            std::to_string(rep.discrepancies) + " discrepancies)");
    return *declared;
  });
}

ConvexSubgroup s_der(const FieldPtr& field) { return cut_stabilizer(gamma_der(field)); }

Cut gamma_der(const Derivation& d) {
  const Cut& base = gamma_der(d.field);
  if (!d.scale) return base;
  return base.translated(d.scale_value());
}

unsigned ndeg(const DiffPoly& p) {
  if (p.is_zero()) throw ContractError("Newton degree of the zero polynomial");
  const FieldPtr& f = p.field();
  const std::size_t n = f->rank();
  Cut c = gamma_der(p.derivation());
  if (c.kind() == Cut::Kind::empty) throw ValidationError("empty derivation cut");
  if (auto mu = c.max()) return ddeg(comp_conj(p, Series::with_value(f, *mu)));

  std::size_t k = c.kind() == Cut::Kind::all ? 0 : c.depth();
  GroupElement base = GroupElement::zero(n);
  GroupElement top = GroupElement::zero(n);
  Rational side = 1;
  if (c.kind() == Cut::Kind::prefix) {
    GroupElement b = c.bound();
    if (!c.inclusive()) {
      // Base point strictly inside; approach the bound from below.
      GroupElement step = GroupElement::unit(k, k - 1);
      for (std::size_t i = 0; i < k; ++i) top[i] = step[i];
      b -= step;
      side = -1;
    }
    for (std::size_t i = 0; i < k; ++i) base[i] = b[i];
  }
  DiffPoly q = comp_conj(p, Series::with_value(f, base));
  return tropical_ddeg_embedded(q, top.inserted(k, side), k);
}

unsigned ndeg_geq(const DiffPoly& p, const GroupElement& gamma) {
  return ndeg(mul_conj(p, Series::with_value(p.field(), gamma)));
}

FieldPtr infinitesimal_extension(const FieldPtr& base) {
  static std::mutex mu;
  static std::map<const FieldInstance*, std::pair<FieldPtr, FieldPtr>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(base.get());
  if (it != cache.end()) return it->second.second;
  FieldPtr ext = with_constant_infinitesimal(base);
  cache.emplace(base.get(), std::make_pair(base, ext));
  return ext;
}

DiffPoly transported(const DiffPoly& p, const FieldPtr& target) {
  const Derivation& d = p.derivation();
  Derivation nd(target, d.scale ? std::optional<Series>(d.scale->transported(target)) : std::nullopt);
  DiffPoly out(nd);
  for (const auto& [i, c] : p.terms()) out += DiffPoly::monomial(nd, i, c.transported(target));
  return out;
}

unsigned ndeg_prec(const DiffPoly& p, const Series& g) {
  if (g.is_zero()) throw ContractError("ndeg_prec needs g != 0");
  FieldPtr ext = infinitesimal_extension(p.field());
  DiffPoly q = transported(p, ext);
  const std::size_t n = p.field()->rank();
  Series shift = g.transported(ext) * Series::with_value(ext, GroupElement::unit(n + 1, n));
  return ndeg(mul_conj(q, shift));
}

CutNdeg ndeg_in_cut(const DiffPoly& p, const PcSequence& seq) {
  if (seq.window == 0) throw ContractError("stabilization window must be positive");
  if (seq.length < seq.window + 2)
    throw ContractError("pc-sequence prefix too short for the stabilization window");
  CutNdeg out{0, 0, seq.window, {}};
  std::optional<GroupElement> last_gap;
  Series prev = seq.term(0);
  std::size_t run = 0;
  for (std::size_t rho = 0; rho + 1 < seq.length; ++rho) {
    Series next = seq.term(rho + 1);
    Series diff = next - prev;
    if (diff.is_zero()) throw ContractError("not a pc-sequence: consecutive terms coincide");
    GroupElement gap = diff.val();
    if (last_gap && !(gap > *last_gap))
      throw ContractError("not a pc-sequence: gaps " + to_string(*last_gap) + " then " + to_string(gap));
    last_gap = gap;
    unsigned d = ndeg_geq(add_conj(p, prev), gap);
    if (!out.history.empty() && out.history.back() == d)
      ++run;
    else
      run = 1;
    out.history.push_back(d);
    if (run >= seq.window) {
      out.ndeg = d;
      out.stabilized_at = rho + 1 - run;
      return out;
    }
    prev = std::move(next);
  }
  throw ContractError("no stabilization within the generated prefix");
}

FlexProbe flex_probe(const DiffPoly& p, const GroupElement& beta, std::size_t samples, std::uint64_t seed) {
  if (beta.sign() <= 0) throw ContractError("flex_probe needs beta > 0");
  if (ndeg(p) < 1) throw ContractError("flex_probe needs ndeg P >= 1");
  const FieldPtr& f = p.field();
  Sampler s(seed);
  FlexProbe out;
  while (out.samples < samples) {
    GroupElement g = s.element(f->rank());
    if (!(g.abs() < beta)) continue;
    ++out.samples;
    Series val = eval(p, s.monomial(f, g));
    if (val.is_zero()) {
      out.hit_zero = true;
    } else if (!val.empty()) {
      out.values.insert(val.val());
    }
  }
  return out;
}

}  // namespace vdf
