#include "cbhd/coeffs.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "cbhd/error.hpp"

namespace cbhd {

namespace {

// Beyond this order the exact rationals get expensive (thousands of digits)
// and binary64 values come from K_n = (-1)^{n/2+1} 2 zeta(n) / (2 pi)^n.
constexpr std::size_t kExactDoubles = 100;

double kn_from_zeta(std::size_t n) {
  if (n % 2 == 1) return 0.0;
  double zeta = 1.0;
  for (int p = 2; p < 64; ++p) {
    const double term = std::pow(static_cast<double>(p), -static_cast<double>(n));
    if (term < 1e-20) break;
    zeta += term;
  }
  const double magnitude = 2.0 * zeta * std::exp(-static_cast<double>(n) * std::log(2.0 * std::numbers::pi));
  return (n / 2) % 2 == 1 ? magnitude : -magnitude;
}

// Grows by extension only; earlier entries are never recomputed.
class KnCache {
 public:
  std::vector<Rational> prefix(std::size_t n_max) {
    std::lock_guard lock(mutex_);
    extend(n_max);
    return {values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(n_max + 1)};
  }

  Rational at(std::size_t n) {
    std::lock_guard lock(mutex_);
    extend(n);
    return values_[n];
  }

  std::vector<double> prefix_double(std::size_t n_max) {
    std::lock_guard lock(mutex_);
    extend(std::min(n_max, kExactDoubles));
    while (doubles_.size() <= n_max) {
      const std::size_t n = doubles_.size();
      doubles_.push_back(n <= kExactDoubles ? values_[n].get_d() : kn_from_zeta(n));
    }
    return {doubles_.begin(), doubles_.begin() + static_cast<std::ptrdiff_t>(n_max + 1)};
  }

 private:
  void extend(std::size_t n_max) {
    if (values_.empty()) {
      factorials_.emplace_back(1);
      values_.emplace_back(1);
    }
    while (factorials_.size() < n_max + 3) {
      factorials_.push_back(factorials_.back() * Integer(static_cast<unsigned long>(factorials_.size())));
    }
    for (std::size_t n = values_.size(); n <= n_max; ++n) {
      Rational sum = 0;
      for (std::size_t i = 0; i < n; ++i) {
        sum += values_[i] / Rational(factorials_[n + 1 - i]);
      }
      values_.emplace_back(-sum);
    }
  }

  std::mutex mutex_;
  std::vector<Integer> factorials_;
  std::vector<Rational> values_;
  std::vector<double> doubles_;
};

KnCache& cache() {
  static KnCache instance;
  return instance;
}

}  // namespace

Rational kn(std::size_t n) { return cache().at(n); }

std::vector<double> kn_values(std::size_t n_max) { return cache().prefix_double(n_max); }

CoeffTable coeff_table(CoeffKind kind, std::size_t n_max) {
  CoeffTable table{kind, cache().prefix(n_max)};
  for (std::size_t n = 0; n < table.values.size(); ++n) {
    Rational& v = table.values[n];
    switch (kind) {
      case CoeffKind::K: break;
      case CoeffKind::T:
        if (n % 2 == 1) v = -v;
        break;
      case CoeffKind::Alpha: v = -v; break;
      case CoeffKind::GAbs: v = abs(v); break;
    }
  }
  return table;
}

Rational bernoulli_oracle(std::size_t n) {
  std::vector<Rational> b{Rational(1)};
  for (std::size_t m = 1; m <= n; ++m) {
    // binom(m+1, k) built incrementally from binom(m+1, 0) = 1.
    Integer binom = 1;
    Rational sum = 0;
    for (std::size_t k = 0; k < m; ++k) {
      sum += Rational(binom) * b[k];
      binom = binom * Integer(static_cast<unsigned long>(m + 1 - k)) / Integer(static_cast<unsigned long>(k + 1));
    }
    b.emplace_back(-sum / Rational(Integer(static_cast<unsigned long>(m + 1))));
  }
  return b[n];
}

double zeta_crosscheck(std::size_t k, std::size_t n_terms) {
  if (k == 0 || n_terms == 0) {
    throw Error(ErrorCode::InvalidArgument, "zeta_crosscheck needs k >= 1 and n_terms >= 1");
  }
  const double s = 2.0 * static_cast<double>(k);
  // Smallest terms first.
  double zeta = 0.0;
  for (std::size_t n = n_terms; n >= 1; --n) zeta += std::pow(static_cast<double>(n), -s);
  const double sign = (k % 2 == 1) ? 1.0 : -1.0;
  const double predicted = 2.0 * sign * zeta / std::pow(2.0 * std::numbers::pi, s);
  return std::abs(kn(2 * k).get_d() - predicted);
}

std::string_view to_string(CoeffKind kind) {
  switch (kind) {
    case CoeffKind::K: return "K";
    case CoeffKind::T: return "T";
    case CoeffKind::Alpha: return "ALPHA";
    case CoeffKind::GAbs: return "G_ABS";
  }
  return "K";
}

std::optional<CoeffKind> parse_coeff_kind(std::string_view name) {
  for (auto kind : {CoeffKind::K, CoeffKind::T, CoeffKind::Alpha, CoeffKind::GAbs}) {
    if (name == to_string(kind)) return kind;
  }
  return std::nullopt;
}

}  // namespace cbhd
