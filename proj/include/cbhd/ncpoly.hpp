#pragma once

#include <map>
#include <string>
#include <string_view>

#include "cbhd/rational.hpp"

namespace cbhd {

/// A monomial in the non-commuting letters x and y, stored as its letters
/// ("xyx"). The empty word is the unit.
using Word = std::string;

bool is_word(std::string_view letters);

/// Canonical order: total degree first, then lexicographic (x < y).
struct WordOrder {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

struct Bidegree {
  int i = 0;  // number of x
  int j = 0;  // number of y

  friend bool operator==(const Bidegree&, const Bidegree&) = default;
};

Bidegree bidegree_of(const Word& w);

/// Element of the free associative algebra over Q in x, y. Zero
/// coefficients are never stored.
class NcPoly {
 public:
  using Terms = std::map<Word, Rational, WordOrder>;

  NcPoly() = default;

  static NcPoly x();
  static NcPoly y();
  static NcPoly one();
  static NcPoly monomial(const Word& w, const Rational& c = Rational(1));

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Coefficient of w (zero when absent).
  Rational coeff(const Word& w) const;

  void add_term(const Word& w, const Rational& c);

  /// Sum of the terms of total degree n.
  NcPoly degree_part(std::size_t n) const;
  /// Sum of the terms of bidegree d.
  NcPoly bidegree_part(Bidegree d) const;

  NcPoly& operator+=(const NcPoly& other);
  NcPoly& operator-=(const NcPoly& other);
  NcPoly& operator*=(const Rational& c);

  friend NcPoly operator+(NcPoly a, const NcPoly& b) { return a += b; }
  friend NcPoly operator-(NcPoly a, const NcPoly& b) { return a -= b; }
  friend NcPoly operator-(NcPoly a) { return a *= Rational(-1); }
  friend NcPoly operator*(const Rational& c, NcPoly a) { return a *= c; }
  friend NcPoly operator*(const NcPoly& a, const NcPoly& b);

  friend bool operator==(const NcPoly& a, const NcPoly& b) { return a.terms_ == b.terms_; }

  /// Sum of |coefficients|.
  double l1_norm() const;

  /// One "coeff word" line per term in canonical order, "0" for zero.
  std::string to_string() const;

 private:
  Terms terms_;
};

NcPoly nc_mul(const NcPoly& p, const NcPoly& q);
/// p q - q p.
NcPoly nc_bracket(const NcPoly& p, const NcPoly& q);
/// Product with all words longer than max_degree discarded.
NcPoly nc_mul_truncated(const NcPoly& p, const NcPoly& q, std::size_t max_degree);

}  // namespace cbhd
