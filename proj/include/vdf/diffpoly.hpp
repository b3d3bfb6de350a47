#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "vdf/series.hpp"

namespace vdf {

/// Exponents (i_0, ..., i_r) of Y, Y', ..., Y^(r); stored without trailing zeros.
using MultiIndex = std::vector<unsigned>;

unsigned degree(const MultiIndex& i);
/// i_1 + 2 i_2 + ... + r i_r
unsigned weight(const MultiIndex& i);
MultiIndex trimmed(MultiIndex i);
MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);
MultiIndex unit_index(std::size_t j, unsigned power = 1);

/// Sorted list of derivative orders, one entry per factor: Y^i with i = (2,0,1)
/// is the word 0 0 2.
using Word = std::vector<unsigned>;
Word word_of(const MultiIndex& i);
MultiIndex index_of_word(const Word& w);

/// The derivation y -> scale * y' on a field instance (scale = 1 when absent).
/// Compositional conjugation by phi multiplies the scale by phi^-1.
struct Derivation {
  FieldPtr field;
  std::optional<Series> scale;

  explicit Derivation(FieldPtr f) : field(std::move(f)) {}
  Derivation(FieldPtr f, std::optional<Series> s);

  Series apply(const Series& y) const;
  /// y, Dy, ..., D^n y
  std::vector<Series> jet(const Series& y, std::size_t n) const;
  Derivation conjugated(const Series& phi) const;
  /// Valuation of the scale (zero for the plain derivation).
  GroupElement scale_value() const;
};

bool operator==(const Derivation& a, const Derivation& b);

class DiffPoly {
 public:
  using TermMap = std::map<MultiIndex, Series>;

  explicit DiffPoly(Derivation d);  // zero

  static DiffPoly constant(Derivation d, const Series& c);
  /// Y^(k)
  static DiffPoly y(Derivation d, std::size_t k = 0);
  static DiffPoly monomial(Derivation d, const MultiIndex& i, const Series& c);

  const Derivation& derivation() const { return der_; }
  const FieldPtr& field() const { return der_.field; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Highest derivative occurring (0 for constants).
  std::size_t order() const;
  unsigned degree() const;
  unsigned weight() const;
  /// (order r, degree in Y^(r), total degree)
  std::tuple<std::size_t, unsigned, unsigned> complexity() const;
  Series coefficient(const MultiIndex& i) const;
  /// Homogeneous part P_d.
  DiffPoly homogeneous_part(unsigned d) const;

  DiffPoly operator-() const;
  DiffPoly& operator+=(const DiffPoly& q);
  DiffPoly& operator-=(const DiffPoly& q);
  friend DiffPoly operator+(DiffPoly p, const DiffPoly& q) { return p += q; }
  friend DiffPoly operator-(DiffPoly p, const DiffPoly& q) { return p -= q; }
  friend DiffPoly operator*(const DiffPoly& p, const DiffPoly& q);
  DiffPoly scaled(const Series& c) const;
  DiffPoly pow(unsigned n) const;

  /// Same coefficients read with another derivation.
  DiffPoly with_derivation(Derivation d) const;

  /// e.g. "Y^2 + (t)*Y'"; Y^(k) for k >= 4.
  std::string to_string() const;

  friend bool operator==(const DiffPoly& a, const DiffPoly& b) {
    return a.der_ == b.der_ && a.terms_ == b.terms_;
  }

 private:
  void add_term(const MultiIndex& i, const Series& c);

  Derivation der_;
  TermMap terms_;
};

/// Replaces Y^(j) by images[j] (images must cover the order of p).
DiffPoly substitute(const DiffPoly& p, const std::vector<DiffPoly>& images);

Series eval(const DiffPoly& p, const Series& f);
/// P(a + Y)
DiffPoly add_conj(const DiffPoly& p, const Series& a);
/// P(a Y)
DiffPoly mul_conj(const DiffPoly& p, const Series& a);
/// P^phi, a polynomial for the derivation phi^-1 D.
DiffPoly comp_conj(const DiffPoly& p, const Series& phi);

/// min v(P_i)
GroupElement gauss_val(const DiffPoly& p);

struct DominantData {
  unsigned ddeg = 0;
  unsigned dwt = 0;
  DiffPoly dp;
  DiffPoly wp;
  GroupElement value;
  /// Residues of d_P^-1 P_i over Q for the indices of D(P).
  std::map<MultiIndex, Rational> dominant_part;
};

DominantData dominant(const DiffPoly& p);
unsigned ddeg(const DiffPoly& p);
unsigned dwt(const DiffPoly& p);

/// P_[w] = P_i / multinomial(|i|; i_0, ..., i_r) for the sorted word w of i.
Series word_coefficient(const DiffPoly& p, const Word& w);

}  // namespace vdf
