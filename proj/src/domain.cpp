#include "cbhd/domain.hpp"

#include <cmath>
#include <limits>

#include "cbhd/coeffs.hpp"
#include "cbhd/constants.hpp"
#include "cbhd/error.hpp"
#include "cbhd/quadrature.hpp"

namespace cbhd {

namespace {

void require_inside(double u, const char* who) {
  if (!(std::abs(u) < kTwoPi)) throw Error(ErrorCode::OutOfRange, std::string(who) + ": |u| >= 2 pi");
}

// log R_n for the analytic remainder R = G - P; -inf where R_n = 0.
class RemainderLogs {
 public:
  double operator()(std::size_t n) {
    while (logs_.size() <= n) logs_.push_back(compute(logs_.size()));
    return logs_[n];
  }

 private:
  static double compute(std::size_t n) {
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();
    if (n == 0) return 0.0;
    if (n == 1) return std::log(0.5);
    if (n % 2 == 1) return kNegInf;
    const double nd = static_cast<double>(n);
    if (n <= 6) {
      const double k = std::abs(kn(n).get_d());
      return std::log(k - 2.0 * std::pow(kTwoPi, -nd));
    }
    // 2 sum_{p>=2} (2 pi p)^{-n} = 2 (4 pi)^{-n} sum_{p>=2} (2/p)^n.
    double tail = 0.0;
    for (int p = 400; p >= 2; --p) tail += std::pow(2.0 / p, nd);
    return std::log(2.0) - nd * std::log(2.0 * kTwoPi) + std::log(tail);
  }

  std::vector<double> logs_;
};

}  // namespace

double g_closed(double u) {
  require_inside(u, "g_closed");
  if (std::abs(u) < 1e-3) {
    const auto k = kn_values(8);
    const double u2 = u * u;
    return 1.0 + 0.5 * u + u2 * (k[2] + u2 * (std::abs(k[4]) + u2 * (k[6] + u2 * std::abs(k[8]))));
  }
  const double half = 0.5 * u;
  return 2.0 + half - half / std::tan(half);
}

double g_series(double u, std::size_t n_max) {
  require_inside(u, "g_series");
  const auto k = kn_values(n_max);
  double acc = 0.0;
  for (std::size_t n = n_max + 1; n-- > 0;) acc = acc * u + std::abs(k[n]);
  return acc;
}

std::vector<double> g_taylor_scaled(double z0, std::size_t m_max) {
  if (!(z0 >= 0.0 && z0 < kTwoPi)) {
    throw Error(ErrorCode::OutOfRange, "g_taylor_scaled: center must lie in [0, 2 pi)");
  }
  const double rho = kTwoPi - z0;
  const double plus = kTwoPi + z0;
  std::vector<double> gamma(m_max + 1);

  RemainderLogs log_r;
  const double log_rho = std::log(rho);
  const double log_z0 = z0 > 0.0 ? std::log(z0) : 0.0;
  for (std::size_t m = 0; m <= m_max; ++m) {
    const double md = static_cast<double>(m);
    double pole = kTwoPi / rho + (kTwoPi / plus) * std::pow(-rho / plus, md);
    if (m == 0) pole -= 2.0;

    // rho^m sum_{n>=m} R_n C(n,m) z0^{n-m}; all terms nonnegative.
    double rem = 0.0;
    if (z0 == 0.0) {
      rem = std::exp(log_r(m) + md * log_rho);
    } else {
      const double lgm = std::lgamma(md + 1.0);
      double prev = std::numeric_limits<double>::infinity();
      for (std::size_t n = m; n < m + 20000; ++n) {
        const double lr = log_r(n);
        if (std::isinf(lr)) continue;
        const double nd = static_cast<double>(n);
        const double log_term = lr + std::lgamma(nd + 1.0) - lgm - std::lgamma(nd - md + 1.0) +
                                (nd - md) * log_z0 + md * log_rho;
        const double term = std::exp(log_term);
        rem += term;
        if (n > m + 4 && term < prev && term <= 1e-18 * rem) break;
        prev = term;
      }
    }
    gamma[m] = pole + rem;
  }
  return gamma;
}

std::vector<double> g_taylor(double z0, std::size_t m_max) {
  auto gamma = g_taylor_scaled(z0, m_max);
  const double rho = kTwoPi - z0;
  for (std::size_t m = 0; m <= m_max; ++m) gamma[m] /= std::pow(rho, static_cast<double>(m));
  return gamma;
}

IntegralOfInverseG inverse_g_integral(double lo, double hi, double abs_tol) {
  const auto integrand = [](double u) {
    if (std::abs(u) >= kTwoPi) return 0.0;
    return 1.0 / g_closed(u);
  };
  const auto r = adaptive_simpson(integrand, lo, hi, abs_tol);
  return {r.value, r.error_estimate};
}

LifetimeBounds lifetime_bounds(const DomainQuery& q, double abs_tol) {
  if (!(q.norm_a >= 0.0) || !(q.norm_b >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "lifetime_bounds: norms must be nonnegative");
  }
  if (!(q.norm_a < kTwoPi)) throw Error(ErrorCode::OutOfRange, "lifetime_bounds: norm_a >= 2 pi");
  if (q.norm_b == 0.0) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return {-inf, inf, 0.0, 0.0};
  }
  const auto up = inverse_g_integral(q.norm_a, kTwoPi, abs_tol);
  const auto down = inverse_g_integral(-kTwoPi, q.norm_a, abs_tol);
  return {-down.value / q.norm_b, up.value / q.norm_b, down.error_estimate / q.norm_b,
          up.error_estimate / q.norm_b};
}

bool in_delta(const DomainQuery& q) { return q.norm_a + q.norm_b < std::log(2.0); }

bool in_gamma(const DomainQuery& q) {
  if (!(q.norm_a >= 0.0 && q.norm_a < kTwoPi) || !(q.norm_b >= 0.0)) return false;
  if (q.norm_b == 0.0) return true;
  return lifetime_bounds(q).beta_tilde > 1.0;
}

bool in_gamma_swapped(const DomainQuery& q) { return in_gamma({q.norm_b, q.norm_a}); }

std::vector<BoundaryPoint> gamma_boundary_table(std::size_t grid_points) {
  if (grid_points < 2) throw Error(ErrorCode::InvalidArgument, "gamma_boundary_table: grid_points >= 2");
  std::vector<BoundaryPoint> table;
  table.reserve(grid_points);
  for (std::size_t k = 0; k < grid_points; ++k) {
    const double a = kTwoPi * static_cast<double>(k) / static_cast<double>(grid_points);
    table.push_back({a, inverse_g_integral(a, kTwoPi).value});
  }
  return table;
}

}  // namespace cbhd
