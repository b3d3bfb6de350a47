#include "vdf/fkernel.hpp"

#include <mutex>
#include <sstream>

#include "vdf/errors.hpp"

namespace vdf {

RatDiffPoly rat_derive(const RatDiffPoly& p) {
  RatDiffPoly out;
  for (const auto& [i, c] : p) {
    for (std::size_t j = 0; j < i.size(); ++j) {
      if (i[j] == 0) continue;
      MultiIndex k = i;
      k[j] -= 1;
      if (k.size() == j + 1) k.push_back(0);
      k[j + 1] += 1;
      out[trimmed(k)] += c * i[j];
    }
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

RatDiffPoly rat_mul(const RatDiffPoly& a, const RatDiffPoly& b) {
  RatDiffPoly out;
  for (const auto& [i, c] : a)
    for (const auto& [j, d] : b) out[i + j] += c * d;
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

namespace {

std::mutex fnk_mutex;
std::vector<std::vector<RatDiffPoly>> fnk_rows{{RatDiffPoly{{MultiIndex{}, Rational(1)}}}};

}  // namespace

RatDiffPoly fnk(unsigned n, unsigned k) {
  if (k > n) throw ContractError("F^n_k needs k <= n");
  std::lock_guard<std::mutex> lock(fnk_mutex);
  const RatDiffPoly x{{MultiIndex{1}, Rational(1)}};
  while (fnk_rows.size() <= n) {
    const auto& prev = fnk_rows.back();
    std::size_t m = prev.size();  // previous n is m - 1
    std::vector<RatDiffPoly> row(m + 1);
    for (std::size_t j = 1; j <= m; ++j) {
      RatDiffPoly r = j < m ? rat_derive(prev[j]) : RatDiffPoly{};
      for (const auto& [i, c] : rat_mul(x, prev[j - 1])) r[i] += c;
      for (auto it = r.begin(); it != r.end();) it = it->second == 0 ? r.erase(it) : std::next(it);
      row[j] = std::move(r);
    }
    fnk_rows.push_back(std::move(row));
  }
  return fnk_rows[n][k];
}

Series eval_rat(const RatDiffPoly& p, const std::vector<Series>& jet, const FieldPtr& field) {
  Series out(field);
  for (const auto& [i, c] : p) {
    Series term = Series::constant(field, c);
    for (std::size_t j = 0; j < i.size(); ++j) {
      if (i[j] == 0) continue;
      if (j >= jet.size()) throw ContractError("jet too short for F-kernel evaluation");
      term = term * jet[j].pow(i[j]);
    }
    out += term;
  }
  return out;
}

std::string rat_to_string(const RatDiffPoly& p, const std::string& var) {
  if (p.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    const auto& [i, c] = *it;
    Rational a = abs(c);
    os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
    first = false;
    std::string mono;
    for (std::size_t j = 0; j < i.size(); ++j) {
      for (unsigned e = 0; e < i[j]; ++e) mono += var + std::string(j, '\'');
    }
    if (mono.empty())
      os << to_string(a);
    else if (a == 1)
      os << mono;
    else
      os << to_string(a) << mono;
  }
  return os.str();
}

}  // namespace vdf
