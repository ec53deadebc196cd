#pragma once

#include <numbers>

namespace cbhd {

/// Radius of convergence of the Todd-type series and edge of the domain.
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace cbhd
