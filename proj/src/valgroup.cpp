#include "vdf/valgroup.hpp"

#include <sstream>

#include "vdf/errors.hpp"

namespace vdf {

namespace {

void require_same_rank(const GroupElement& a, const GroupElement& b) {
  if (a.rank() != b.rank())
    throw RankMismatch("group elements of rank " + std::to_string(a.rank()) + " and " +
                       std::to_string(b.rank()));
}

}  // namespace

GroupElement::GroupElement(std::vector<Rational> coords) : coords_(std::move(coords)) {
  for (auto& c : coords_) c.canonicalize();
}

GroupElement::GroupElement(std::initializer_list<Rational> coords)
    : GroupElement(std::vector<Rational>(coords)) {}

GroupElement GroupElement::zero(std::size_t rank) {
  return GroupElement(std::vector<Rational>(rank));
}

GroupElement GroupElement::unit(std::size_t rank, std::size_t index, const Rational& scale) {
  GroupElement g = zero(rank);
  g.coords_.at(index) = scale;
  return g;
}

bool GroupElement::is_zero() const {
  for (const auto& c : coords_)
    if (c != 0) return false;
  return true;
}

int GroupElement::sign() const {
  for (const auto& c : coords_) {
    if (c > 0) return 1;
    if (c < 0) return -1;
  }
  return 0;
}

GroupElement& GroupElement::operator+=(const GroupElement& other) {
  require_same_rank(*this, other);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

GroupElement& GroupElement::operator-=(const GroupElement& other) {
  require_same_rank(*this, other);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
  return *this;
}

GroupElement& GroupElement::operator*=(const Rational& scale) {
  for (auto& c : coords_) c *= scale;
  return *this;
}

GroupElement& GroupElement::operator/=(const Rational& scale) {
  if (scale == 0) throw ContractError("division of a group element by zero");
  for (auto& c : coords_) c /= scale;
  return *this;
}

GroupElement GroupElement::operator-() const {
  GroupElement g = *this;
  for (auto& c : g.coords_) c = -c;
  return g;
}

std::strong_ordering lex_cmp(const GroupElement& a, const GroupElement& b) {
  require_same_rank(a, b);
  for (std::size_t i = 0; i < a.rank(); ++i) {
    int s = cmp(a[i], b[i]);
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const GroupElement& a, const GroupElement& b) {
  return lex_cmp(a, b);
}

bool operator==(const GroupElement& a, const GroupElement& b) {
  return lex_cmp(a, b) == std::strong_ordering::equal;
}

GroupElement GroupElement::prefix(std::size_t k) const {
  if (k > rank()) throw RankMismatch("prefix longer than rank");
  return GroupElement(std::vector<Rational>(coords_.begin(), coords_.begin() + k));
}

GroupElement GroupElement::suffix(std::size_t k) const {
  if (k > rank()) throw RankMismatch("suffix start beyond rank");
  return GroupElement(std::vector<Rational>(coords_.begin() + k, coords_.end()));
}

GroupElement GroupElement::inserted(std::size_t pos, const Rational& value) const {
  if (pos > rank()) throw RankMismatch("insert position beyond rank");
  std::vector<Rational> c = coords_;
  c.insert(c.begin() + static_cast<std::ptrdiff_t>(pos), value);
  return GroupElement(std::move(c));
}

GroupElement GroupElement::concat(const GroupElement& tail) const {
  std::vector<Rational> c = coords_;
  c.insert(c.end(), tail.coords_.begin(), tail.coords_.end());
  return GroupElement(std::move(c));
}

std::vector<std::string> GroupElement::to_strings() const {
  std::vector<std::string> out;
  out.reserve(coords_.size());
  for (const auto& c : coords_) out.push_back(to_string(c));
  return out;
}

std::string to_string(const GroupElement& g) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < g.rank(); ++i) os << (i ? "," : "") << to_string(g[i]);
  os << ')';
  return os.str();
}

bool ConvexSubgroup::contains(const GroupElement& g) const {
  if (g.rank() != rank) throw RankMismatch("subgroup membership: rank mismatch");
  for (std::size_t i = 0; i < prefix_len; ++i)
    if (g[i] != 0) return false;
  return true;
}

GroupElement quotient_map(const GroupElement& g, const ConvexSubgroup& delta) {
  if (g.rank() != delta.rank) throw RankMismatch("quotient_map: rank mismatch");
  return g.prefix(delta.prefix_len);
}

GroupElement with_infinitesimal(const GroupElement& g, Side side) {
  return g.inserted(g.rank(), side == Side::below ? -1 : 1);
}

Cut Cut::empty(std::size_t rank) { return Cut(Kind::empty, rank, GroupElement{}, false); }

Cut Cut::all(std::size_t rank) { return Cut(Kind::all, rank, GroupElement{}, true); }

Cut Cut::prefix(std::size_t rank, GroupElement bound, bool inclusive) {
  if (bound.rank() == 0 || bound.rank() > rank)
    throw ContractError("prefix cut depth must lie in 1..rank");
  return Cut(Kind::prefix, rank, std::move(bound), inclusive);
}

bool Cut::contains(const GroupElement& g) const {
  if (g.rank() != rank_) throw RankMismatch("cut membership: rank mismatch");
  switch (kind_) {
    case Kind::empty:
      return false;
    case Kind::all:
      return true;
    case Kind::prefix: {
      auto c = lex_cmp(g.prefix(depth()), bound_);
      return c < 0 || (c == 0 && inclusive_);
    }
  }
  return false;
}

std::optional<GroupElement> Cut::max() const {
  if (!has_max()) return std::nullopt;
  return bound_;
}

Cut Cut::translated(const GroupElement& delta) const {
  if (delta.rank() != rank_) throw RankMismatch("cut translation: rank mismatch");
  if (kind_ != Kind::prefix) return *this;
  return Cut(kind_, rank_, bound_ + delta.prefix(depth()), inclusive_);
}

Cut Cut::lifted(std::size_t new_rank) const {
  if (new_rank < depth()) throw RankMismatch("cannot lift a cut below its depth");
  return Cut(kind_, new_rank, bound_, inclusive_);
}

ConvexSubgroup cut_stabilizer(const Cut& c) {
  // Membership in a prefix cut depends only on proj_k, and any translation
  // moving proj_k shifts the bound, which is never absorbed in Q^k.
  if (c.kind() != Cut::Kind::prefix) return ConvexSubgroup{c.rank(), 0};
  return ConvexSubgroup{c.rank(), c.depth()};
}

std::string to_string(const Cut& c) {
  switch (c.kind()) {
    case Cut::Kind::empty:
      return "{}";
    case Cut::Kind::all:
      return "Gamma";
    case Cut::Kind::prefix:
      return std::string("{gamma : proj_") + std::to_string(c.depth()) + "(gamma) " +
             (c.inclusive() ? "<= " : "< ") + to_string(c.bound()) + "}";
  }
  return "";
}

}  // namespace vdf
