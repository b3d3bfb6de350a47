#include "vdf/truncation.hpp"

namespace vdf {

bool Truncation::keeps(const GroupElement& v) const {
  if (!at) return true;
  auto c = lex_cmp(v, *at);
  return c < 0 || (open && c == 0);
}

bool Truncation::implies_at_least(const GroupElement& g) const {
  return !at || *at >= g;
}

Truncation Truncation::shifted(const GroupElement& delta) const {
  if (!at) return *this;
  return {*at + delta, open};
}

std::strong_ordering operator<=>(const Truncation& a, const Truncation& b) {
  if (!a.at || !b.at) {
    if (!a.at && !b.at) return std::strong_ordering::equal;
    return a.at ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  auto c = lex_cmp(*a.at, *b.at);
  if (c != 0) return c;
  if (a.open == b.open) return std::strong_ordering::equal;
  return a.open ? std::strong_ordering::greater : std::strong_ordering::less;
}

bool operator==(const Truncation& a, const Truncation& b) { return (a <=> b) == 0; }

Truncation min(const Truncation& a, const Truncation& b) { return a <= b ? a : b; }

Truncation sum_bound(const Truncation& a, const Truncation& b) {
  if (!a.at || !b.at) return Truncation::infinite();
  return {*a.at + *b.at, a.open || b.open};
}

std::string to_string(const Truncation& t) {
  if (!t.at) return "inf";
  return std::string(t.open ? ">" : ">=") + to_string(*t.at);
}

}  // namespace vdf
