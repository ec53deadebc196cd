#pragma once

#include <Eigen/Dense>

#include <random>
#include <string>

#include "cbhd/lie_backend.hpp"
#include "cbhd/ncpoly.hpp"

namespace cbhd::fixtures {

inline Eigen::MatrixXd random_matrix(std::mt19937_64& rng, Eigen::Index n, double target_norm) {
  return MatrixAlgebra<double>(n).random(rng, target_norm);
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Small random polynomial: up to `terms` words of length <= max_len with
// coefficients p/q, |p| <= 5, 1 <= q <= 4.
inline NcPoly random_poly(std::mt19937_64& rng, int terms, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len), letter(0, 1), num(-5, 5), den(1, 4);
  NcPoly p;
  for (int k = 0; k < terms; ++k) {
    Word w;
    const int l = len(rng);
    for (int i = 0; i < l; ++i) w += letter(rng) ? 'y' : 'x';
    p.add_term(w, make_rational(num(rng), den(rng)));
  }
  return p;
}

}  // namespace cbhd::fixtures
