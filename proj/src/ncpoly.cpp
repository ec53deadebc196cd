#include "cbhd/ncpoly.hpp"

#include <algorithm>
#include <cstdlib>

#include "cbhd/error.hpp"

namespace cbhd {

bool is_word(std::string_view letters) {
  return std::all_of(letters.begin(), letters.end(), [](char c) { return c == 'x' || c == 'y'; });
}

Bidegree bidegree_of(const Word& w) {
  const auto nx = static_cast<int>(std::count(w.begin(), w.end(), 'x'));
  return {nx, static_cast<int>(w.size()) - nx};
}

NcPoly NcPoly::x() { return monomial("x"); }
NcPoly NcPoly::y() { return monomial("y"); }
NcPoly NcPoly::one() { return monomial(""); }

NcPoly NcPoly::monomial(const Word& w, const Rational& c) {
  if (!is_word(w)) throw Error(ErrorCode::InvalidArgument, "word over {x,y} expected: " + w);
  NcPoly p;
  p.add_term(w, c);
  return p;
}

Rational NcPoly::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rational(0) : it->second;
}

void NcPoly::add_term(const Word& w, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

NcPoly NcPoly::degree_part(std::size_t n) const {
  NcPoly out;
  for (const auto& [w, c] : terms_) {
    if (w.size() == n) out.terms_.emplace_hint(out.terms_.end(), w, c);
  }
  return out;
}

NcPoly NcPoly::bidegree_part(Bidegree d) const {
  NcPoly out;
  for (const auto& [w, c] : terms_) {
    if (bidegree_of(w) == d) out.terms_.emplace_hint(out.terms_.end(), w, c);
  }
  return out;
}

NcPoly& NcPoly::operator+=(const NcPoly& other) {
  for (const auto& [w, c] : other.terms_) add_term(w, c);
  return *this;
}

NcPoly& NcPoly::operator-=(const NcPoly& other) {
  for (const auto& [w, c] : other.terms_) add_term(w, Rational(-c));
  return *this;
}

NcPoly& NcPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, v] : terms_) v *= c;
  return *this;
}

NcPoly operator*(const NcPoly& a, const NcPoly& b) { return nc_mul(a, b); }

double NcPoly::l1_norm() const {
  double s = 0.0;
  for (const auto& [w, c] : terms_) s += std::abs(c.get_d());
  return s;
}

std::string NcPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [w, c] : terms_) {
    if (!out.empty()) out += '\n';
    out += c.get_str();
    if (!w.empty()) {
      out += ' ';
      out += w;
    }
  }
  return out;
}

NcPoly nc_mul_truncated(const NcPoly& p, const NcPoly& q, std::size_t max_degree) {
  NcPoly out;
  for (const auto& [wp, cp] : p.terms()) {
    for (const auto& [wq, cq] : q.terms()) {
      if (wp.size() + wq.size() > max_degree) break;  // q's words are ordered by length
      out.add_term(wp + wq, Rational(cp * cq));
    }
  }
  return out;
}

NcPoly nc_mul(const NcPoly& p, const NcPoly& q) {
  NcPoly out;
  for (const auto& [wp, cp] : p.terms()) {
    for (const auto& [wq, cq] : q.terms()) out.add_term(wp + wq, Rational(cp * cq));
  }
  return out;
}

NcPoly nc_bracket(const NcPoly& p, const NcPoly& q) { return nc_mul(p, q) - nc_mul(q, p); }

}  // namespace cbhd
