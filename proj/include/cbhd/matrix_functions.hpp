#pragma once

#include <Eigen/Dense>

#include <cmath>

namespace cbhd {

/// Largest singular value by power iteration on A^T A.
template <typename Derived>
double spectral_norm(const Eigen::MatrixBase<Derived>& a, double tol = 1e-12, int max_iter = 10000) {
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  if (a.size() == 0) return 0.0;
  const Matrix gram = a.transpose() * a;

  Eigen::Index start = 0;
  const auto col_norms = gram.colwise().norm();
  if (col_norms.maxCoeff(&start) == Scalar(0)) return 0.0;
  Vector v = gram.col(start) / col_norms(start);

  double lambda = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    Vector w = gram * v;
    const double next = static_cast<double>(v.dot(w));
    const Scalar wn = w.norm();
    if (wn == Scalar(0)) break;
    v = w / wn;
    const bool settled = it > 0 && std::abs(next - lambda) <= tol * std::abs(next);
    lambda = next;
    if (settled) break;
  }
  return std::sqrt(std::max(lambda, 0.0));
}

/// Matrix exponential: scaling and squaring around a degree-18 Taylor core.
template <typename Derived>
typename Derived::PlainObject mat_exp(const Eigen::MatrixBase<Derived>& a) {
  using Plain = typename Derived::PlainObject;
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = a.rows();
  const double norm1 = static_cast<double>(a.cwiseAbs().colwise().sum().maxCoeff());
  int squarings = 0;
  if (norm1 > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
  const Plain scaled = a / Scalar(std::ldexp(1.0, squarings));

  constexpr int kDegree = 18;
  Plain result = Plain::Identity(n, n);
  for (int k = kDegree; k >= 1; --k) {
    result = Plain::Identity(n, n) + (scaled * result) / Scalar(k);
  }
  for (int s = 0; s < squarings; ++s) result = (result * result).eval();
  return result;
}

namespace detail {

template <typename Plain>
Plain denman_beavers_sqrt(const Plain& a) {
  const Eigen::Index n = a.rows();
  Plain y = a;
  Plain z = Plain::Identity(n, n);
  for (int it = 0; it < 100; ++it) {
    const Plain y_inv = y.inverse();
    const Plain z_inv = z.inverse();
    Plain y_next = (y + z_inv) / 2;
    z = (z + y_inv) / 2;
    const double change = static_cast<double>((y_next - y).cwiseAbs().colwise().sum().maxCoeff());
    const double scale = static_cast<double>(y_next.cwiseAbs().colwise().sum().maxCoeff());
    y = std::move(y_next);
    if (change <= 1e-15 * scale) break;
  }
  return y;
}

}  // namespace detail

/// Principal matrix logarithm by inverse scaling and squaring: repeated
/// Denman-Beavers square roots until ||A - I||_1 < 1/4, then the Mercator
/// series to order 30.
template <typename Derived>
typename Derived::PlainObject mat_log(const Eigen::MatrixBase<Derived>& a) {
  using Plain = typename Derived::PlainObject;
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = a.rows();
  const Plain identity = Plain::Identity(n, n);
  Plain x = a;
  int roots = 0;
  while (static_cast<double>((x - identity).cwiseAbs().colwise().sum().maxCoeff()) >= 0.25 && roots < 64) {
    x = detail::denman_beavers_sqrt(x);
    ++roots;
  }
  const Plain e = x - identity;
  constexpr int kOrder = 30;
  Plain sum = Plain::Zero(n, n);
  for (int k = kOrder; k >= 1; --k) {
    // Horner on sum_k (-1)^{k+1} e^k / k.
    const Scalar coef = Scalar((k % 2 == 1) ? 1.0 : -1.0) / Scalar(k);
    sum = e * (coef * identity + sum);
  }
  return sum * Scalar(std::ldexp(1.0, roots));
}

}  // namespace cbhd
