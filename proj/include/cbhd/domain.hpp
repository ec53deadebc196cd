#pragma once

#include <cstddef>
#include <vector>

namespace cbhd {

/// G(u) = 2 + (u/2)(1 - cot(u/2)) on |u| < 2 pi; the power series
/// 1 + u/2 + u^2/12 + ... below |u| = 1e-3. Throws OutOfRange outside.
double g_closed(double u);

/// sum_{n <= n_max} |K_n| u^n with u^1 carrying its sign (1 + u/2 + ...).
double g_series(double u, std::size_t n_max);

/// Taylor coefficients of G around z0 in the scaled variable
/// sigma = (u - z0) / (2 pi - z0):
///   G(z0 + (2 pi - z0) sigma) = sum_m gamma_m sigma^m,  |sigma| < 1.
/// G is split as P + R with P(u) = 2pi/(2pi - u) + 2pi/(2pi + u) - 2 holding
/// the two nearest poles in closed form, and R analytic on |u| < 4 pi with
/// nonnegative coefficients 2 sum_{p>=2} (2 pi p)^{-n} (even n >= 2). Every
/// gamma_m is nonnegative and no step subtracts large quantities.
/// Requires 0 <= z0 < 2 pi.
std::vector<double> g_taylor_scaled(double z0, std::size_t m_max);

/// G^{(m)}(z0) / m! for m <= m_max (unscaled; fine for small m).
std::vector<double> g_taylor(double z0, std::size_t m_max);

struct DomainQuery {
  double norm_a = 0.0;
  double norm_b = 0.0;
};

/// alpha_tilde = (1/|b|) int_{|a|}^{-2pi} du/G,  beta_tilde = (1/|b|) int_{|a|}^{2pi} du/G.
/// For norm_b = 0 both are infinite (sentinels; no error).
struct LifetimeBounds {
  double alpha_tilde = 0.0;
  double beta_tilde = 0.0;
  double alpha_error = 0.0;
  double beta_error = 0.0;
};

/// int_{lo}^{hi} du / G(u), the integrand extended by 0 at +-2 pi.
struct IntegralOfInverseG {
  double value = 0.0;
  double error_estimate = 0.0;
};
IntegralOfInverseG inverse_g_integral(double lo, double hi, double abs_tol = 1e-10);

/// Throws OutOfRange if norm_a >= 2 pi, InvalidArgument on negative input.
LifetimeBounds lifetime_bounds(const DomainQuery& q, double abs_tol = 1e-10);

/// |a| + |b| < log 2.
bool in_delta(const DomainQuery& q);

/// |a| < 2 pi and beta_tilde > 1 (norm_b = 0 counts as inside).
bool in_gamma(const DomainQuery& q);

/// in_gamma with the roles of a and b exchanged.
bool in_gamma_swapped(const DomainQuery& q);

struct BoundaryPoint {
  double norm_a = 0.0;
  double max_norm_b = 0.0;
};

/// norm_a = 2 pi k / grid_points for k < grid_points, each paired with
/// int_{norm_a}^{2pi} du / G(u).
std::vector<BoundaryPoint> gamma_boundary_table(std::size_t grid_points);

}  // namespace cbhd
