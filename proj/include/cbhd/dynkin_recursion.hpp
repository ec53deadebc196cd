#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "cbhd/coeffs.hpp"
#include "cbhd/lie_backend.hpp"

namespace cbhd {

/// Which index the bracket recursion increments.
///   IncrementX: Z_{i+1,j} = 1/(i+1) sum_h K_h          sum [Z_{i1j1},...[Z_{ihjh}, a]...]
///   IncrementY: Z_{i,j+1} = 1/(j+1) sum_h (-1)^h K_h   sum [Z_{i1j1},...[Z_{ihjh}, b]...]
/// the inner sums running over (i1,j1)+...+(ih,jh) = (i,j) with no zero pair.
enum class RecursionRoute { IncrementX, IncrementY };

/// Z_{i,j}(a,b) for 0 <= i <= max_i, 0 <= j <= max_j, by the bracket
/// recursion. The nested bracket sums are shared through
///   S_0(0,0) = target,  S_h(p,q) = sum_{(r,s) != 0} [Z_{r,s}, S_{h-1}(p-r, q-s)],
/// filled in order of total degree.
template <LieBackend B>
class DynkinTable {
 public:
  using Element = typename B::Element;

  DynkinTable(B backend, const Element& a, const Element& b, int max_i, int max_j,
              RecursionRoute route = RecursionRoute::IncrementX)
      : backend_(std::move(backend)), max_i_(max_i), max_j_(max_j), route_(route) {
    if (max_i < 0 || max_j < 0) throw std::invalid_argument("DynkinTable: negative order");
    z_.assign(static_cast<std::size_t>((max_i + 1) * (max_j + 1)), backend_.zero());
    if (max_i >= 1) z(1, 0) = a;
    if (max_j >= 1) z(0, 1) = b;

    const bool by_x = route == RecursionRoute::IncrementX;
    s_max_p_ = by_x ? max_i - 1 : max_i;
    s_max_q_ = by_x ? max_j : max_j - 1;
    if (s_max_p_ < 0 || s_max_q_ < 0) return;
    s_.resize(static_cast<std::size_t>((s_max_p_ + 1) * (s_max_q_ + 1)));
    s(0, 0).push_back(by_x ? a : b);

    const auto k = coeff_table(CoeffKind::K, static_cast<std::size_t>(max_i + max_j)).values;
    for (int n = 2; n <= max_i + max_j; ++n) {
      for (int p = 0; p <= n - 1; ++p) {
        const int q = n - 1 - p;
        if (p <= s_max_p_ && q <= s_max_q_) fill_s(p, q);
      }
      for (int i = 0; i <= n; ++i) {
        const int j = n - i;
        if (i > max_i || j > max_j) continue;
        const int p = by_x ? i - 1 : i;
        const int q = by_x ? j : j - 1;
        if (p < 0 || q < 0) continue;  // Z_{0,n} or Z_{n,0}: zero for n >= 2
        const auto& sums = s(p, q);
        Element acc = backend_.zero();
        for (std::size_t h = 1; h < sums.size(); ++h) {
          if (k[h] == 0) continue;
          const Rational coef = (by_x || h % 2 == 0) ? k[h] : Rational(-k[h]);
          acc = backend_.add(acc, backend_.scale(backend_.scalar(coef), sums[h]));
        }
        const Rational inv = make_rational(1, by_x ? i : j);
        z(i, j) = backend_.scale(backend_.scalar(inv), acc);
      }
    }
  }

  int max_i() const { return max_i_; }
  int max_j() const { return max_j_; }

  const Element& operator()(int i, int j) const {
    if (i < 0 || j < 0 || i > max_i_ || j > max_j_) throw std::out_of_range("DynkinTable index");
    return z_[index(i, j)];
  }

 private:
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i * (max_j_ + 1) + j); }
  Element& z(int i, int j) { return z_[index(i, j)]; }
  std::vector<Element>& s(int p, int q) {
    return s_[static_cast<std::size_t>(p * (s_max_q_ + 1) + q)];
  }

  // S_h(p,q) for h = 0..p+q; S_0 vanishes off (0,0).
  void fill_s(int p, int q) {
    auto& row = s(p, q);
    row.assign(static_cast<std::size_t>(p + q + 1), backend_.zero());
    for (int r = 0; r <= p; ++r) {
      for (int t = 0; t <= q; ++t) {
        if (r == 0 && t == 0) continue;
        const Element& zrt = z_[index(r, t)];
        if (backend_.is_zero(zrt)) continue;
        const auto& inner = s(p - r, q - t);
        for (std::size_t h = 1; h < row.size() && h - 1 < inner.size(); ++h) {
          if (backend_.is_zero(inner[h - 1])) continue;
          row[h] = backend_.add(row[h], backend_.bracket(zrt, inner[h - 1]));
        }
      }
    }
  }

  B backend_;
  int max_i_;
  int max_j_;
  RecursionRoute route_;
  int s_max_p_ = -1;
  int s_max_q_ = -1;
  std::vector<Element> z_;
  std::vector<std::vector<Element>> s_;
};

/// Z_{i,j}(a,b) by the bracket recursion, memoized for this call only.
template <LieBackend B>
typename B::Element recursive_Z_eval(const B& backend, Bidegree d, const typename B::Element& a,
                                     const typename B::Element& b,
                                     RecursionRoute route = RecursionRoute::IncrementX) {
  if (d.i < 0 || d.j < 0) throw std::invalid_argument("recursive_Z_eval: negative bidegree");
  return DynkinTable<B>(backend, a, b, d.i, d.j, route)(d.i, d.j);
}

}  // namespace cbhd
