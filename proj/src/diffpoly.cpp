#include "vdf/diffpoly.hpp"

#include <algorithm>
#include <sstream>

#include "vdf/errors.hpp"
#include "vdf/fkernel.hpp"

namespace vdf {

unsigned degree(const MultiIndex& i) {
  unsigned d = 0;
  for (unsigned e : i) d += e;
  return d;
}

unsigned weight(const MultiIndex& i) {
  unsigned w = 0;
  for (std::size_t j = 1; j < i.size(); ++j) w += static_cast<unsigned>(j) * i[j];
  return w;
}

MultiIndex trimmed(MultiIndex i) {
  while (!i.empty() && i.back() == 0) i.pop_back();
  return i;
}

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex c(std::max(a.size(), b.size()), 0);
  for (std::size_t j = 0; j < a.size(); ++j) c[j] += a[j];
  for (std::size_t j = 0; j < b.size(); ++j) c[j] += b[j];
  return trimmed(std::move(c));
}

MultiIndex unit_index(std::size_t j, unsigned power) {
  if (power == 0) return {};
  MultiIndex i(j + 1, 0);
  i[j] = power;
  return i;
}

Word word_of(const MultiIndex& i) {
  Word w;
  for (std::size_t j = 0; j < i.size(); ++j) w.insert(w.end(), i[j], static_cast<unsigned>(j));
  return w;
}

MultiIndex index_of_word(const Word& w) {
  MultiIndex i;
  for (unsigned j : w) {
    if (i.size() <= j) i.resize(j + 1, 0);
    i[j] += 1;
  }
  return trimmed(std::move(i));
}

Derivation::Derivation(FieldPtr f, std::optional<Series> s) : field(std::move(f)), scale(std::move(s)) {
  if (scale && scale->field() != field) throw ContractError("derivation scale over a different field");
}

Series Derivation::apply(const Series& y) const {
  Series d = y.derive();
  return scale ? *scale * d : d;
}

std::vector<Series> Derivation::jet(const Series& y, std::size_t n) const {
  std::vector<Series> out{y};
  out.reserve(n + 1);
  for (std::size_t k = 1; k <= n; ++k) out.push_back(apply(out.back()));
  return out;
}

Derivation Derivation::conjugated(const Series& phi) const {
  if (phi.is_zero()) throw ContractError("compositional conjugation by zero");
  Series inv = phi.invert(Truncation::infinite());
  return Derivation(field, scale ? *scale * inv : inv);
}

GroupElement Derivation::scale_value() const {
  return scale ? scale->val() : GroupElement::zero(field->rank());
}

bool operator==(const Derivation& a, const Derivation& b) {
  if (a.field != b.field) return false;
  Series one = Series::constant(a.field, 1);
  return (a.scale ? *a.scale : one) == (b.scale ? *b.scale : one);
}

DiffPoly::DiffPoly(Derivation d) : der_(std::move(d)) {}

DiffPoly DiffPoly::constant(Derivation d, const Series& c) { return monomial(std::move(d), {}, c); }

DiffPoly DiffPoly::y(Derivation d, std::size_t k) {
  FieldPtr f = d.field;
  return monomial(std::move(d), unit_index(k), Series::constant(f, 1));
}

DiffPoly DiffPoly::monomial(Derivation d, const MultiIndex& i, const Series& c) {
  DiffPoly p(std::move(d));
  p.add_term(trimmed(i), c);
  return p;
}

void DiffPoly::add_term(const MultiIndex& i, const Series& c) {
  if (c.field() != der_.field) throw ContractError("coefficient over a different field");
  auto it = terms_.find(i);
  if (it == terms_.end()) {
    if (!c.is_zero()) terms_.emplace(i, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

std::size_t DiffPoly::order() const {
  std::size_t r = 0;
  for (const auto& [i, c] : terms_)
    if (!i.empty()) r = std::max(r, i.size() - 1);
  return r;
}

unsigned DiffPoly::degree() const {
  unsigned d = 0;
  for (const auto& [i, c] : terms_) d = std::max(d, vdf::degree(i));
  return d;
}

unsigned DiffPoly::weight() const {
  unsigned w = 0;
  for (const auto& [i, c] : terms_) w = std::max(w, vdf::weight(i));
  return w;
}

std::tuple<std::size_t, unsigned, unsigned> DiffPoly::complexity() const {
  std::size_t r = order();
  unsigned s = 0;
  for (const auto& [i, c] : terms_)
    if (i.size() == r + 1) s = std::max(s, i[r]);
  return {r, s, degree()};
}

Series DiffPoly::coefficient(const MultiIndex& i) const {
  auto it = terms_.find(trimmed(i));
  return it == terms_.end() ? Series(field()) : it->second;
}

DiffPoly DiffPoly::homogeneous_part(unsigned d) const {
  DiffPoly out(der_);
  for (const auto& [i, c] : terms_)
    if (vdf::degree(i) == d) out.terms_.emplace(i, c);
  return out;
}

DiffPoly DiffPoly::operator-() const {
  DiffPoly out = *this;
  for (auto& [i, c] : out.terms_) c = -c;
  return out;
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& q) {
  if (q.field() != field()) throw ContractError("differential polynomials over different fields");
  for (const auto& [i, c] : q.terms_) add_term(i, c);
  return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& q) {
  if (q.field() != field()) throw ContractError("differential polynomials over different fields");
  for (const auto& [i, c] : q.terms_) add_term(i, -c);
  return *this;
}

DiffPoly operator*(const DiffPoly& p, const DiffPoly& q) {
  if (q.field() != p.field()) throw ContractError("differential polynomials over different fields");
  DiffPoly out(p.der_);
  for (const auto& [i, c] : p.terms_)
    for (const auto& [j, d] : q.terms_) out.add_term(i + j, c * d);
  return out;
}

DiffPoly DiffPoly::scaled(const Series& c) const {
  DiffPoly out(der_);
  for (const auto& [i, d] : terms_) out.add_term(i, c * d);
  return out;
}

DiffPoly DiffPoly::pow(unsigned n) const {
  DiffPoly out = constant(der_, Series::constant(field(), 1));
  for (unsigned k = 0; k < n; ++k) out = out * *this;
  return out;
}

DiffPoly DiffPoly::with_derivation(Derivation d) const {
  if (d.field != field()) throw ContractError("derivation over a different field");
  DiffPoly out = *this;
  out.der_ = std::move(d);
  return out;
}

namespace {

std::string y_symbol(std::size_t j) {
  if (j < 4) return "Y" + std::string(j, '\'');
  return "Y^(" + std::to_string(j) + ")";
}

}  // namespace

std::string DiffPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [i, c] = *it;
    if (!first) os << " + ";
    first = false;
    std::string mono;
    for (std::size_t j = 0; j < i.size(); ++j) {
      if (i[j] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += y_symbol(j);
      if (i[j] > 1) mono += "^" + std::to_string(i[j]);
    }
    bool unit = c.is_single_term() && c.dominant().first.is_zero() && c.dominant().second == 1;
    if (mono.empty())
      os << '(' << c.to_string() << ')';
    else if (unit)
      os << mono;
    else
      os << '(' << c.to_string() << ")*" << mono;
  }
  return os.str();
}

DiffPoly substitute(const DiffPoly& p, const std::vector<DiffPoly>& images) {
  if (images.size() < p.order() + 1) throw ContractError("substitution images do not cover the order");
  DiffPoly out(images.empty() ? p.derivation() : images[0].derivation());
  std::map<std::pair<std::size_t, unsigned>, DiffPoly> powers;
  auto power = [&](std::size_t j, unsigned e) -> const DiffPoly& {
    unsigned have = 1;
    while (have < e && powers.count({j, have + 1})) ++have;
    if (have == 1 && !powers.count({j, 1})) powers.emplace(std::make_pair(j, 1u), images[j]);
    for (; have < e; ++have) powers.emplace(std::make_pair(j, have + 1), powers.at({j, have}) * images[j]);
    return powers.at({j, e});
  };
  for (const auto& [i, c] : p.terms()) {
    DiffPoly term = DiffPoly::constant(out.derivation(), c);
    for (std::size_t j = 0; j < i.size(); ++j)
      if (i[j] > 0) term = term * power(j, i[j]);
    out += term;
  }
  return out;
}

Series eval(const DiffPoly& p, const Series& f) {
  if (f.field() != p.field()) throw ContractError("evaluation point over a different field");
  std::vector<Series> jet = p.derivation().jet(f, p.order());
  Series out(p.field());
  for (const auto& [i, c] : p.terms()) {
    Series term = c;
    for (std::size_t j = 0; j < i.size(); ++j)
      if (i[j] > 0) term = term * jet[j].pow(i[j]);
    out += term;
  }
  return out;
}

DiffPoly add_conj(const DiffPoly& p, const Series& a) {
  const Derivation& d = p.derivation();
  std::vector<Series> jet = d.jet(a, p.order());
  std::vector<DiffPoly> images;
  for (std::size_t j = 0; j <= p.order(); ++j)
    images.push_back(DiffPoly::y(d, j) + DiffPoly::constant(d, jet[j]));
  return substitute(p, images);
}

DiffPoly mul_conj(const DiffPoly& p, const Series& a) {
  if (a.is_zero()) throw ContractError("multiplicative conjugation by zero");
  const Derivation& d = p.derivation();
  std::size_t r = p.order();
  std::vector<Series> jet = d.jet(a, r);
  std::vector<DiffPoly> images;
  for (std::size_t j = 0; j <= r; ++j) {
    DiffPoly img(d);
    Integer binom = 1;
    for (std::size_t k = 0; k <= j; ++k) {
      // binom = C(j, k)
      img += DiffPoly::monomial(d, unit_index(k), jet[j - k].scaled(Rational(binom)));
      binom = binom * static_cast<unsigned long>(j - k) / static_cast<unsigned long>(k + 1);
    }
    images.push_back(std::move(img));
  }
  return substitute(p, images);
}

DiffPoly comp_conj(const DiffPoly& p, const Series& phi) {
  if (phi.is_zero()) throw ContractError("compositional conjugation by zero");
  if (phi.field() != p.field()) throw ContractError("conjugating element over a different field");
  Derivation nd = p.derivation().conjugated(phi);
  std::size_t r = p.order();
  std::vector<Series> jet = p.derivation().jet(phi, r > 0 ? r - 1 : 0);
  std::vector<DiffPoly> images{DiffPoly::y(nd, 0)};
  for (std::size_t n = 1; n <= r; ++n) {
    DiffPoly img(nd);
    for (std::size_t k = 1; k <= n; ++k) {
      Series c = eval_rat(fnk(static_cast<unsigned>(n), static_cast<unsigned>(k)), jet, p.field());
      img += DiffPoly::monomial(nd, unit_index(k), c);
    }
    images.push_back(std::move(img));
  }
  return substitute(p.with_derivation(nd), images);
}

GroupElement gauss_val(const DiffPoly& p) {
  if (p.is_zero()) throw ContractError("gaussian valuation of the zero polynomial");
  std::optional<GroupElement> best;
  for (const auto& [i, c] : p.terms()) {
    if (c.empty()) continue;
    GroupElement v = c.val();
    if (!best || v < *best) best = v;
  }
  if (!best) throw IndeterminateValuation("no coefficient has a determinate valuation");
  // Coefficients known only modulo a bound matter when the bound can reach the minimum.
  for (const auto& [i, c] : p.terms()) {
    if (!c.empty()) continue;
    const Truncation& t = c.truncation();
    if (t.open ? *t.at < *best : *t.at <= *best)
      throw IndeterminateValuation("a coefficient known only modulo " + to_string(t) + " may reach " +
                                   to_string(*best));
  }
  return *best;
}

DominantData dominant(const DiffPoly& p) {
  GroupElement v = gauss_val(p);
  DominantData out{0, 0, DiffPoly(p.derivation()), DiffPoly(p.derivation()), v, {}};
  for (const auto& [i, c] : p.terms()) {
    if (c.empty() || c.val() != v) continue;
    out.ddeg = std::max(out.ddeg, degree(i));
    out.dwt = std::max(out.dwt, weight(i));
    out.dp += DiffPoly::monomial(p.derivation(), i, c);
    out.dominant_part[i] = c.coefficient(v);
  }
  for (const auto& [i, c] : out.dp.terms())
    if (weight(i) == out.dwt) out.wp += DiffPoly::monomial(p.derivation(), i, c);
  return out;
}

unsigned ddeg(const DiffPoly& p) {
  GroupElement v = gauss_val(p);
  unsigned d = 0;
  for (const auto& [i, c] : p.terms())
    if (!c.empty() && c.val() == v) d = std::max(d, degree(i));
  return d;
}

unsigned dwt(const DiffPoly& p) { return dominant(p).dwt; }

Series word_coefficient(const DiffPoly& p, const Word& w) {
  Word sorted = w;
  std::sort(sorted.begin(), sorted.end());
  MultiIndex i = index_of_word(sorted);
  Integer multinomial = 1;
  unsigned running = 0;
  for (unsigned e : i) {
    for (unsigned k = 1; k <= e; ++k) {
      ++running;
      multinomial = multinomial * running / k;
    }
  }
  return p.coefficient(i).scaled(Rational(1) / Rational(multinomial));
}

}  // namespace vdf
