#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "cbhd/rational.hpp"

namespace cbhd {

/// Coefficient families derived from K_n, the Maclaurin coefficients of
/// z / (e^z - 1) (so K_n = B_n / n!).
///   T     : Todd function w / (1 - e^{-w}),   T_n = (-1)^n K_n
///   Alpha : w / (1 - e^w),                    alpha_n = -K_n
///   GAbs  : majorant series G,                |K_n|
enum class CoeffKind { K, T, Alpha, GAbs };

struct CoeffTable {
  CoeffKind kind = CoeffKind::K;
  std::vector<Rational> values;
};

/// K_0 = 1, K_n = -sum_{i<n} K_i / (n+1-i)!. Memoized; thread-safe.
Rational kn(std::size_t n);

CoeffTable coeff_table(CoeffKind kind, std::size_t n_max);

/// binary64 values of K_0..K_{n_max}, for floating-point backends: the
/// rounded rationals through n = 100, the zeta closed form above.
std::vector<double> kn_values(std::size_t n_max);

/// B_n from sum_{k=0}^{n} binom(n+1, k) B_k = 0. Shares no code with kn.
Rational bernoulli_oracle(std::size_t n);

/// |T_{2k} - 2 (-1)^{k+1} zeta_N(2k) / (2 pi)^{2k}| with zeta_N the partial
/// zeta sum over n_terms terms.
double zeta_crosscheck(std::size_t k, std::size_t n_terms);

std::string_view to_string(CoeffKind kind);
std::optional<CoeffKind> parse_coeff_kind(std::string_view name);

}  // namespace cbhd
