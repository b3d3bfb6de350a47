#include "vdf/field.hpp"

#include <mutex>

#include "vdf/errors.hpp"

namespace vdf {

namespace {

std::optional<GroupElement> spec_lower_bound(const LogderSpec& s) {
  if (!s.terms.empty()) return s.terms.begin()->first;
  return s.tau.at;
}

LogderSpec spec_of(std::initializer_list<std::pair<GroupElement, Rational>> terms) {
  LogderSpec s;
  for (const auto& [v, c] : terms)
    if (c != 0) s.terms[v] += c;
  return s;
}

}  // namespace

FieldInstance::FieldInstance(std::string name, std::vector<Generator> generators,
                             std::optional<GroupElement> shift, std::optional<Cut> gamma_der)
    : name_(std::move(name)), rank_(generators.size()), gens_(std::move(generators)) {
  if (rank_ == 0) throw ContractError("field instance needs at least one generator");
  for (std::size_t i = 0; i < rank_; ++i) {
    const auto& g = gens_[i];
    if (g.name.empty()) throw ContractError("generator name must be nonempty");
    for (std::size_t j = 0; j < i; ++j)
      if (gens_[j].name == g.name) throw ContractError("duplicate generator '" + g.name + "'");
    if (g.value.rank() != rank_)
      throw RankMismatch("generator '" + g.name + "' has value of rank " +
                         std::to_string(g.value.rank()) + ", expected " + std::to_string(rank_));
    for (std::size_t j = 0; j < i; ++j)
      if (g.value[j] != 0)
        throw ContractError("generator values are not triangular at '" + g.name + "'");
    if (g.value[i] == 0)
      throw ContractError("generator '" + g.name + "' has zero pivot coordinate");
    if (g.logder) {
      for (const auto& [v, c] : g.logder->terms) {
        if (v.rank() != rank_) throw RankMismatch("logder term rank mismatch for '" + g.name + "'");
        if (c == 0) throw ContractError("zero coefficient in logder of '" + g.name + "'");
        if (!g.logder->tau.keeps(v))
          throw ContractError("logder term of '" + g.name + "' lies beyond its truncation");
      }
    }
  }

  std::optional<GroupElement> computed;
  for (const auto& g : gens_) {
    if (!g.logder) continue;
    auto lb = spec_lower_bound(*g.logder);
    if (lb && (!computed || *lb < *computed)) computed = lb;
  }
  if (!computed) computed = GroupElement::zero(rank_);
  if (shift) {
    if (shift->rank() != rank_) throw RankMismatch("shift rank mismatch");
    if (*shift > *computed)
      throw ValidationError("declared shift " + to_string(*shift) +
                            " exceeds the minimal logder valuation " + to_string(*computed));
    shift_ = *shift;
  } else {
    shift_ = *computed;
  }

  if (gamma_der && gamma_der->rank() != rank_) throw RankMismatch("gamma_der rank mismatch");
  gamma_der_ = std::move(gamma_der);
}

std::optional<std::size_t> FieldInstance::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].name == name) return i;
  return std::nullopt;
}

GroupElement FieldInstance::value_of(const Monomial& m) const {
  if (m.size() != rank_) throw RankMismatch("monomial has wrong number of exponents");
  GroupElement v = GroupElement::zero(rank_);
  for (std::size_t i = 0; i < rank_; ++i)
    if (m[i] != 0) v += gens_[i].value * m[i];
  return v;
}

Monomial FieldInstance::monomial_of(const GroupElement& v) const {
  if (v.rank() != rank_) throw RankMismatch("value has wrong rank for this field");
  Monomial q(rank_);
  for (std::size_t j = 0; j < rank_; ++j) {
    Rational rest = v[j];
    for (std::size_t i = 0; i < j; ++i)
      if (q[i] != 0) rest -= q[i] * gens_[i].value[j];
    q[j] = rest / gens_[j].value[j];
  }
  return q;
}

const Cut& FieldInstance::cached_cut(const std::function<Cut()>& compute) const {
  std::call_once(cut_once_, [&] {
    try {
      cut_ = compute();
    } catch (...) {
      cut_error_ = std::current_exception();
    }
  });
  if (cut_error_) std::rethrow_exception(cut_error_);
  return *cut_;
}

FieldPtr laurent_ddt() {
  static const FieldPtr f = [] {
    GroupElement one{1};
    return std::make_shared<const FieldInstance>(
        "laurent_ddt",
        std::vector<FieldInstance::Generator>{{"t", one, spec_of({{GroupElement{-1}, 1}})}},
        std::nullopt, Cut::prefix(1, GroupElement{-1}, true));
  }();
  return f;
}

FieldPtr laurent_tddt() {
  static const FieldPtr f = [] {
    return std::make_shared<const FieldInstance>(
        "laurent_tddt",
        std::vector<FieldInstance::Generator>{{"t", GroupElement{1}, spec_of({{GroupElement{0}, 1}})}},
        std::nullopt, Cut::prefix(1, GroupElement{0}, true));
  }();
  return f;
}

FieldPtr laurent_tddt_coarse() {
  static const FieldPtr f = [] {
    return std::make_shared<const FieldInstance>(
        "laurent_tddt_coarse",
        std::vector<FieldInstance::Generator>{
            {"t", GroupElement{1, 0}, spec_of({{GroupElement{0, 0}, 1}})},
            {"s", GroupElement{0, 1}, LogderSpec{}}},
        std::nullopt, Cut::prefix(2, GroupElement{0}, true));
  }();
  return f;
}

namespace {

FieldPtr make_fragment(std::size_t depth, bool with_exp) {
  const std::size_t off = with_exp ? 1 : 0;
  const std::size_t n = depth + 1 + off;
  std::vector<FieldInstance::Generator> gens;
  if (with_exp) gens.push_back({"e_x", GroupElement::unit(n, 0, -1), spec_of({{GroupElement::zero(n), 1}})});
  GroupElement partial = GroupElement::zero(n);
  for (std::size_t k = 0; k <= depth; ++k) {
    partial += GroupElement::unit(n, off + k);
    // l_k^dagger = (l_0 ... l_k)^-1, whose value is e_off + ... + e_{off+k}.
    gens.push_back({"l" + std::to_string(k), GroupElement::unit(n, off + k, -1), spec_of({{partial, 1}})});
  }
  std::vector<Rational> b(n, 1);
  if (with_exp) b[0] = 0;
  return std::make_shared<const FieldInstance>(
      (with_exp ? "M" : "L") + std::to_string(depth), std::move(gens), std::nullopt,
      Cut::prefix(n, GroupElement(std::move(b)), true));
}

FieldPtr cached_fragment(std::size_t depth, bool with_exp) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, bool>, FieldPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{depth, with_exp}];
  if (!slot) slot = make_fragment(depth, with_exp);
  return slot;
}

}  // namespace

FieldPtr transseries_fragment(std::size_t depth) { return cached_fragment(depth, true); }

FieldPtr log_fragment(std::size_t depth) { return cached_fragment(depth, false); }

FieldPtr builtin_field(const std::string& name) {
  if (name == "laurent_ddt") return laurent_ddt();
  if (name == "laurent_tddt") return laurent_tddt();
  if (name == "laurent_tddt_coarse") return laurent_tddt_coarse();
  if (name.size() >= 2 && (name[0] == 'M' || name[0] == 'L')) {
    std::size_t depth = 0;
    for (std::size_t i = 1; i < name.size(); ++i) {
      if (name[i] < '0' || name[i] > '9' || i > 3) throw ContractError("unknown builtin field '" + name + "'");
      depth = depth * 10 + static_cast<std::size_t>(name[i] - '0');
    }
    return name[0] == 'M' ? transseries_fragment(depth) : log_fragment(depth);
  }
  throw ContractError("unknown builtin field '" + name + "'");
}

FieldPtr with_constant_infinitesimal(const FieldPtr& base, const std::string& name) {
  const std::size_t n = base->rank();
  std::vector<FieldInstance::Generator> gens;
  for (const auto& g : base->generators()) {
    FieldInstance::Generator h{g.name, g.value.inserted(n), std::nullopt};
    if (g.logder) {
      LogderSpec s;
      for (const auto& [v, c] : g.logder->terms) s.terms.emplace(v.inserted(n), c);
      if (g.logder->tau.at) s.tau = {g.logder->tau.at->inserted(n), g.logder->tau.open};
      h.logder = std::move(s);
    }
    gens.push_back(std::move(h));
  }
  std::string fresh = name;
  while (base->index_of(fresh)) fresh += "_";
  gens.push_back({fresh, GroupElement::unit(n + 1, n), LogderSpec{}});
  std::optional<Cut> cut;
  if (base->declared_gamma_der()) cut = base->declared_gamma_der()->lifted(n + 1);
  return std::make_shared<const FieldInstance>(base->name() + "+" + fresh, std::move(gens),
                                               base->shift().inserted(n), std::move(cut));
}

}  // namespace vdf
