#pragma once

#include <functional>

namespace cbhd {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Adaptive Simpson with an explicit interval stack. Each accepted panel
/// gets the Richardson correction; panels at max_depth are accepted as is.
QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol = 1e-10, int max_depth = 60);

/// Composite Simpson on `panels` equal panels (panels is rounded up to even).
double composite_simpson(const std::function<double(double)>& f, double a, double b, long panels);

}  // namespace cbhd
