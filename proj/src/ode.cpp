#include "cbhd/ode.hpp"

#include "cbhd/quadrature.hpp"

namespace cbhd {

double separable_exit_time(const std::function<double(double)>& g, double z0, double z_max,
                           double abs_tol) {
  if (!(z_max > z0)) throw Error(ErrorCode::InvalidArgument, "separable_exit_time: need z_max > z0");
  constexpr int kSamples = 1000;
  for (int k = 0; k < kSamples; ++k) {
    const double u = z0 + (z_max - z0) * static_cast<double>(k) / kSamples;
    const double v = g(u);
    if (!(v > 0.0)) {
      throw Error(ErrorCode::NonPositiveField, "separable_exit_time: g <= 0 at u = " + std::to_string(u));
    }
  }
  const auto inverse = [&](double u) {
    if (u >= z_max) {
      try {
        const double v = g(u);
        return std::isfinite(v) ? 1.0 / v : 0.0;
      } catch (const Error& e) {
        if (is_domain_error(e)) return 0.0;
        throw;
      }
    }
    return 1.0 / g(u);
  };
  return adaptive_simpson(inverse, z0, z_max, abs_tol).value;
}

}  // namespace cbhd
