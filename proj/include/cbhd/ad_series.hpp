#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "cbhd/coeffs.hpp"
#include "cbhd/constants.hpp"
#include "cbhd/error.hpp"
#include "cbhd/lie_backend.hpp"

namespace cbhd {

/// (ad_y)^n (b).
template <LieBackend B>
typename B::Element ad_power_apply(const B& backend, const typename B::Element& y,
                                   const typename B::Element& b, std::size_t n) {
  typename B::Element out = b;
  for (std::size_t k = 0; k < n && !backend.is_zero(out); ++k) out = backend.bracket(y, out);
  return out;
}

template <typename Element>
struct ToddResult {
  Element value;
  std::size_t terms = 0;  // highest index H included
};

/// sum_{n=0}^{H} K_n (-ad_y)^n (b). H is the first index at which the term
/// bound ||b|| |K_n| ||y||^n has been below eps for two consecutive n, or
/// h_max. The bound is a priori; near ||y|| = 2 pi it says little.
template <LieBackend B>
ToddResult<typename B::Element> todd_apply(const B& backend, const typename B::Element& y,
                                           const typename B::Element& b, std::size_t h_max,
                                           double eps) {
  const double ny = backend.norm(y);
  if (!(ny < kTwoPi)) throw Error(ErrorCode::NormTooLarge, "todd_apply: norm(y) >= 2 pi");
  const double nb = backend.norm(b);
  const auto k = k_scalars(backend, h_max);
  const auto kd = kn_values(h_max);
  const auto minus_one = backend.scalar(Rational(-1));

  typename B::Element sum = b;
  typename B::Element power = b;  // (-ad_y)^n b
  double ny_pow = 1.0;
  int quiet = 0;
  std::size_t n = 0;
  while (n < h_max) {
    ++n;
    ny_pow *= ny;
    if (!backend.is_zero(power)) power = backend.scale(minus_one, backend.bracket(y, power));
    if (k[n] != 0 && !backend.is_zero(power)) sum = backend.add(sum, backend.scale(k[n], power));
    if (nb * std::abs(kd[n]) * ny_pow < eps) {
      if (++quiet == 2) break;
    } else {
      quiet = 0;
    }
  }
  return {sum, n};
}

/// Smallest N for which the geometric tail bound of the two operator series
/// in the inverse check drops below tol:
///   3.3 r^{N+1} / (1 - r) * (e^{|z|} - 1) / |z| < tol,  r = |z| / (2 pi).
/// 3.3 bounds 2 zeta(2); (e^s - 1)/s bounds the second operator.
inline std::size_t todd_truncation_order(double norm_z, double tol = 1e-10) {
  if (!(norm_z < kTwoPi)) throw Error(ErrorCode::NormTooLarge, "todd_truncation_order: norm >= 2 pi");
  if (norm_z == 0.0) return 1;
  const double r = norm_z / kTwoPi;
  const double second = std::expm1(norm_z) / norm_z;
  std::size_t n = 1;
  while (3.3 * std::pow(r, static_cast<double>(n + 1)) / (1.0 - r) * second >= tol) ++n;
  return n;
}

/// max over probes h of || ((1 - exp(ad z)) / ad z) (f(z) h) - h || where
/// f(w) = w / (1 - e^w) = sum alpha_n w^n, both operators summed over
/// n = 0..n_trunc.
template <LieBackend B>
double todd_inverse_residual(const B& backend, const typename B::Element& z,
                             const std::vector<typename B::Element>& probes, std::size_t n_trunc) {
  if (!(backend.norm(z) < kTwoPi)) {
    throw Error(ErrorCode::NormTooLarge, "todd_inverse_residual: norm(z) >= 2 pi");
  }
  const auto k = k_scalars(backend, n_trunc);
  std::vector<typename B::Scalar> neg_inv_fact;  // -1/(n+1)!
  Rational inv_fact = 1;
  for (std::size_t n = 0; n <= n_trunc; ++n) {
    inv_fact /= Rational(static_cast<unsigned long>(n + 1));
    neg_inv_fact.push_back(backend.scalar(Rational(-inv_fact)));
  }
  const auto minus_one = backend.scalar(Rational(-1));
  double worst = 0.0;
  for (const auto& h : probes) {
    typename B::Element inner = backend.zero();
    typename B::Element power = h;
    for (std::size_t n = 0; n <= n_trunc; ++n) {
      if (n > 0) power = backend.bracket(z, power);
      if (k[n] != 0) inner = backend.add(inner, backend.scale(-k[n], power));
    }
    typename B::Element outer = backend.zero();
    power = inner;
    for (std::size_t n = 0; n <= n_trunc; ++n) {
      if (n > 0) power = backend.bracket(z, power);
      outer = backend.add(outer, backend.scale(neg_inv_fact[n], power));
    }
    worst = std::max(worst, backend.norm(backend.add(outer, backend.scale(minus_one, h))));
  }
  return worst;
}

}  // namespace cbhd
