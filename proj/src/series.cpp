#include "vdf/series.hpp"

#include <sstream>

#include "vdf/errors.hpp"

namespace vdf {

Series::Series(FieldPtr field) : field_(std::move(field)) {
  if (!field_) throw ContractError("series needs a field");
}

Series Series::unknown(FieldPtr field, Truncation tau) {
  Series s(std::move(field));
  if (tau.at && tau.at->rank() != s.field_->rank()) throw RankMismatch("truncation rank mismatch");
  s.tau_ = std::move(tau);
  return s;
}

Series Series::constant(FieldPtr field, const Rational& c) {
  Series s(std::move(field));
  if (c != 0) s.terms_.emplace(GroupElement::zero(s.field_->rank()), c);
  return s;
}

Series Series::monomial(FieldPtr field, const Monomial& m, const Rational& c) {
  GroupElement v = field->value_of(m);
  return with_value(std::move(field), v, c);
}

Series Series::with_value(FieldPtr field, const GroupElement& v, const Rational& c) {
  Series s(std::move(field));
  if (v.rank() != s.field_->rank()) throw RankMismatch("monomial value rank mismatch");
  if (c != 0) s.terms_.emplace(v, c);
  return s;
}

Series Series::generator(FieldPtr field, const std::string& name, const Rational& exponent) {
  auto idx = field->index_of(name);
  if (!idx) throw ContractError("unknown generator '" + name + "' in field " + field->name());
  Monomial m(field->rank());
  m[*idx] = exponent;
  return monomial(std::move(field), m);
}

Series Series::from_terms(FieldPtr field, TermMap terms, Truncation tau) {
  Series s(std::move(field));
  for (const auto& [v, c] : terms)
    if (v.rank() != s.field_->rank()) throw RankMismatch("term value rank mismatch");
  s.terms_ = std::move(terms);
  s.tau_ = std::move(tau);
  s.prune();
  return s;
}

void Series::prune() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second == 0 || !tau_.keeps(it->first))
      it = terms_.erase(it);
    else
      ++it;
  }
}

void Series::check_same_field(const Series& g) const {
  if (field_ != g.field_)
    throw ContractError("series over different fields: " + field_->name() + " and " + g.field_->name());
}

std::optional<GroupElement> Series::valuation() const {
  if (!terms_.empty()) return terms_.begin()->first;
  if (!tau_.is_finite()) return std::nullopt;
  throw IndeterminateValuation("series is zero only modulo " + vdf::to_string(tau_));
}

GroupElement Series::val() const {
  auto v = valuation();
  if (!v) throw ContractError("valuation of zero");
  return *v;
}

Truncation Series::lower_bound() const {
  if (!terms_.empty()) return Truncation::closed(terms_.begin()->first);
  return tau_;
}

std::pair<GroupElement, Rational> Series::dominant() const {
  if (terms_.empty()) {
    if (tau_.is_finite()) throw IndeterminateValuation("dominant term of a series known only modulo " + vdf::to_string(tau_));
    throw ContractError("dominant term of zero");
  }
  return *terms_.begin();
}

Rational Series::coefficient(const GroupElement& v) const {
  auto it = terms_.find(v);
  return it == terms_.end() ? Rational(0) : it->second;
}

Series Series::truncated(const Truncation& tau) const {
  Series s = *this;
  s.tau_ = min(tau_, tau);
  s.prune();
  return s;
}

Series Series::operator-() const {
  Series s = *this;
  for (auto& [v, c] : s.terms_) c = -c;
  return s;
}

Series& Series::operator+=(const Series& g) {
  check_same_field(g);
  for (const auto& [v, c] : g.terms_) terms_[v] += c;
  tau_ = min(tau_, g.tau_);
  prune();
  return *this;
}

Series& Series::operator-=(const Series& g) {
  check_same_field(g);
  for (const auto& [v, c] : g.terms_) terms_[v] -= c;
  tau_ = min(tau_, g.tau_);
  prune();
  return *this;
}

Series operator*(const Series& f, const Series& g) {
  f.check_same_field(g);
  Series out(f.field_);
  out.tau_ = min(sum_bound(f.lower_bound(), g.tau_), sum_bound(g.lower_bound(), f.tau_));
  for (const auto& [vf, cf] : f.terms_)
    for (const auto& [vg, cg] : g.terms_) {
      GroupElement v = vf + vg;
      if (out.tau_.keeps(v)) out.terms_[v] += cf * cg;
    }
  out.prune();
  return out;
}

Series Series::scaled(const Rational& c) const {
  if (c == 0) return unknown(field_, tau_);
  Series s = *this;
  for (auto& [v, d] : s.terms_) d *= c;
  return s;
}

Series Series::shifted(const GroupElement& delta) const {
  Series s(field_);
  for (const auto& [v, c] : terms_) s.terms_.emplace(v + delta, c);
  s.tau_ = tau_.shifted(delta);
  return s;
}

Series Series::pow(long n) const {
  if (n < 0) {
    if (!is_single_term()) throw ContractError("negative power of a series with more than one term");
    auto [v, c] = dominant();
    Rational ci = 1 / c;
    return with_value(field_, -v, ci).pow(-n);
  }
  Series result = constant(field_, 1);
  Series base = *this;
  unsigned long e = static_cast<unsigned long>(n);
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Series Series::derive() const {
  const auto& F = *field_;
  Series out(field_);
  out.tau_ = tau_.shifted(F.shift());
  for (const auto& [v, c] : terms_) {
    Monomial m = F.monomial_of(v);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      const auto& g = F.generator(i);
      if (!g.logder) throw ContractError("generator '" + g.name + "' has no declared logarithmic derivative");
      Rational k = c * m[i];
      for (const auto& [w, d] : g.logder->terms) out.terms_[v + w] += k * d;
      out.tau_ = min(out.tau_, g.logder->tau.shifted(v));
    }
  }
  out.prune();
  return out;
}

Series Series::invert(const Truncation& target) const {
  if (is_zero()) throw ContractError("inverse of zero");
  auto [v0, c0] = dominant();
  // f = c0 m0 (1 + u) with u small.
  Series u(field_);
  for (const auto& [v, c] : terms_)
    if (v != v0) u.terms_.emplace(v - v0, c / c0);
  u.tau_ = tau_.shifted(-v0);
  Truncation rel = target.shifted(v0);

  Series sum = constant(field_, 1).truncated(rel);
  Truncation tail = Truncation::infinite();
  if (!u.is_zero()) {
    Series neg_u = -u;
    Series power = neg_u.truncated(rel);
    for (std::size_t k = 1;; ++k) {
      Truncation lb = power.lower_bound();
      if (power.is_zero()) break;
      if (rel.is_finite() && lb >= rel) break;
      if (k >= kInvertTermCap || power.size() > kInvertPowerSizeCap) {
        tail = lb;
        break;
      }
      sum += power;
      power = (power * neg_u).truncated(rel);
    }
  }
  sum = sum.truncated(tail);
  return sum.shifted(-v0).scaled(1 / c0);
}

Series Series::logder(const Truncation& target) const {
  if (is_zero()) throw ContractError("logarithmic derivative of zero");
  Series d = derive();
  if (is_single_term()) {
    auto [v, c] = dominant();
    return d.shifted(-v).scaled(1 / c).truncated(target);
  }
  Truncation inv_target;
  if (target.is_finite() && !d.is_zero()) {
    Truncation lb = d.lower_bound();
    if (lb.is_finite()) inv_target = target.shifted(-*lb.at);
  }
  return (d * invert(inv_target)).truncated(target);
}

Series Series::transported(const FieldPtr& target) const {
  const auto& S = *field_;
  std::vector<std::size_t> map(S.rank());
  std::vector<bool> present(S.rank(), false);
  for (std::size_t i = 0; i < S.rank(); ++i) {
    if (auto j = target->index_of(S.generator(i).name)) {
      map[i] = *j;
      present[i] = true;
    }
  }
  auto move_value = [&](const GroupElement& v) {
    Monomial m = S.monomial_of(v);
    Monomial n(target->rank());
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!present[i])
        throw ContractError("generator '" + S.generator(i).name + "' is absent from field " + target->name());
      n[map[i]] = m[i];
    }
    return target->value_of(n);
  };
  Series out(target);
  for (const auto& [v, c] : terms_) out.terms_.emplace(move_value(v), c);
  if (tau_.at) out.tau_ = {move_value(*tau_.at), tau_.open};
  out.prune();
  return out;
}

std::string monomial_to_string(const FieldInstance& field, const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += field.generator(i).name;
    if (m[i] == 1) continue;
    if (is_integer(m[i]))
      out += "^" + vdf::to_string(m[i]);
    else
      out += "^(" + vdf::to_string(m[i]) + ")";
  }
  return out;
}

std::string Series::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [v, c] : terms_) {
    Rational a = abs(c);
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    std::string mono = monomial_to_string(*field_, field_->monomial_of(v));
    if (mono.empty())
      os << vdf::to_string(a);
    else if (a == 1)
      os << mono;
    else
      os << vdf::to_string(a) << '*' << mono;
  }
  if (tau_.is_finite()) {
    os << (first ? "" : " + ") << "O(" << vdf::to_string(tau_) << ")";
  } else if (first) {
    os << "0";
  }
  return os.str();
}

bool operator==(const Series& a, const Series& b) {
  return a.field_ == b.field_ && a.terms_ == b.terms_ && a.tau_ == b.tau_;
}

bool agree_on_kept_terms(const Series& a, const Series& b) {
  Truncation t = min(a.truncation(), b.truncation());
  return a.truncated(t).terms() == b.truncated(t).terms();
}

}  // namespace vdf
