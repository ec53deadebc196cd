// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "cbhd/ad_series.hpp"
#include "cbhd/coeffs.hpp"
#include "cbhd/comparison.hpp"
#include "cbhd/constants.hpp"
#include "cbhd/domain.hpp"
#include "cbhd/dynkin.hpp"
#include "cbhd/lie_backend.hpp"
#include "cbhd/series.hpp"

using namespace cbhd;
using Eigen::MatrixXd;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<Outcome()> run;
};

const MatrixAlgebra<double> kAlg(3);

double uniform(std::mt19937_64& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

Integer factorial(unsigned long n) {
  Integer f = 1;
  for (unsigned long k = 2; k <= n; ++k) f *= k;
  return f;
}

// --- 1 --------------------------------------------------------------------
Outcome coefficients() {
  Outcome out;
  int mismatches = 0, odd = 0;
  for (unsigned long n = 0; n <= 30; ++n) mismatches += kn(n) * Rational(factorial(n)) != bernoulli_oracle(n);
  for (std::size_t m = 1; m <= 14; ++m) odd += kn(2 * m + 1) != 0;
  out.ok = mismatches == 0 && odd == 0;
  out.detail = fmt::format("{} oracle mismatches, {} nonzero odd terms", mismatches, odd);
  return out;
}

// --- 2 --------------------------------------------------------------------
Outcome dynkin_equivalence() {
  Outcome out;
  int checked = 0, mismatches = 0;
  for (int n = 0; n <= 8; ++n) {
    for (int i = 0; i <= n; ++i) {
      ++checked;
      mismatches += !(recursive_Z_free({i, n - i}) == dynkin_Z({i, n - i}));
    }
  }
  out.ok = mismatches == 0;
  out.detail = fmt::format("{} bidegrees, {} mismatches", checked, mismatches);
  return out;
}

// --- 3 --------------------------------------------------------------------
Outcome bch_oracle() {
  Outcome out;
  const auto oracle = log_expexp_oracle(8);
  int mismatches = 0;
  for (std::size_t n = 1; n <= 8; ++n) mismatches += !(bch_homogeneous(n) == oracle[n]);
  out.ok = mismatches == 0;
  out.detail = fmt::format("degrees 1..8, {} mismatches", mismatches);
  return out;
}

// --- 4 --------------------------------------------------------------------
Outcome todd_invertibility() {
  std::mt19937_64 rng(401);
  double worst = 0.0;
  std::size_t max_order = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const double nz = uniform(rng, 0.0, 0.9 * kTwoPi);
    const MatrixXd z = kAlg.random(rng, nz);
    const std::vector<MatrixXd> probes{kAlg.random(rng, 1.0), kAlg.random(rng, 1.0)};
    const std::size_t n = todd_truncation_order(kAlg.norm(z));
    max_order = std::max(max_order, n);
    worst = std::max(worst, todd_inverse_residual(kAlg, z, probes, n));
  }
  return {worst < 1e-8, fmt::format("max residual {:.3g} (< 1e-8), max order {}", worst, max_order)};
}

// --- 5 --------------------------------------------------------------------
Outcome group_identity() {
  std::mt19937_64 rng(501);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const double total = uniform(rng, 0.0, 0.5), share = uniform(rng, 0.0, 1.0);
    const MatrixXd a = kAlg.random(rng, total * share), b = kAlg.random(rng, total * (1.0 - share));
    worst = std::max(worst, group_residual(a, b, 12));
  }
  return {worst < 1e-9, fmt::format("max relative residual {:.3g} (< 1e-9)", worst)};
}

// --- 6, 7, 8 share the Gamma pairs ----------------------------------------
struct GammaPair {
  MatrixXd a, b;
  DomainQuery q;
  double beta;
};

const std::vector<GammaPair>& gamma_pairs() {
  static const std::vector<GammaPair> pairs = [] {
    std::mt19937_64 rng(601);
    std::vector<GammaPair> out;
    while (out.size() < 10) {
      const double total = uniform(rng, std::log(2.0), 1.2), share = uniform(rng, 0.0, 1.0);
      GammaPair p{kAlg.random(rng, total * share), kAlg.random(rng, total * (1.0 - share)), {}, 0.0};
      p.q = {kAlg.norm(p.a), kAlg.norm(p.b)};
      if (!(p.q.norm_a + p.q.norm_b > std::log(2.0)) || !in_gamma(p.q)) continue;
      p.beta = lifetime_bounds(p.q).beta_tilde;
      out.push_back(std::move(p));
    }
    return out;
  }();
  return pairs;
}

Outcome enlarged_domain() {
  int passed = 0;
  double worst_gap = -std::numeric_limits<double>::infinity(), worst_last = 0.0;
  for (const auto& p : gamma_pairs()) {
    const auto cert = certify(kAlg, p.a, p.b);  // I = J = 24, tol 1e-6
    worst_gap = std::max(worst_gap, cert.partial_norm_sum - cert.psi_at_1);
    worst_last = std::max(worst_last, cert.last_column_sum);
    passed += cert.pass && cert.last_column_sum < 1e-6;
  }
  return {passed == 10, fmt::format("{}/10 certified; max (sum - psi(1)) {:.3g}, max last increment {:.3g}", passed,
                                    worst_gap, worst_last)};
}

Outcome psi_consistency() {
  int checked = 0;
  double worst = 0.0;
  bool ok = true;
  for (const auto& p : gamma_pairs()) {
    if (!(p.beta > 1.05)) continue;
    ++checked;
    const auto series = psi_series_sum(p.q);
    if (!series.converged) {
      ok = false;
      continue;
    }
    worst = std::max(worst, std::abs(series.value - psi_rk(p.q)));
  }
  ok = ok && worst < 1e-6;
  return {ok, fmt::format("{} pairs with beta > 1.05, max |series - rk| {:.3g} (< 1e-6)", checked, worst)};
}

Outcome majorant_comparison() {
  MajorizationOptions opt;
  opt.grid_tol = 1e-8;
  opt.lifetime_slack = 1e-3;
  int linear_ok = 0, cbhd_ok = 0;
  std::mt19937_64 rng(801);
  for (int trial = 0; trial < 20; ++trial) {
    const MatrixXd A = kAlg.random(rng, uniform(rng, 0.2, 3.0));
    const MatrixXd x0 = kAlg.random(rng, uniform(rng, 0.05, 1.0));
    const double na = kAlg.norm(A), slack = uniform(rng, 0.0, 0.5);
    VectorProblem<MatrixAlgebra<double>> vp{kAlg, [A](double, const MatrixXd& y) -> MatrixXd { return A * y; },
                                            x0, {}};
    vp.domain.b = uniform(rng, 2.0, 8.0);
    // |A y| <= (|A|/2)|y| in this norm; the slack makes some majorants loose.
    const ScalarMajorant sm{[na, slack](double, double z) { return (0.5 * na + slack) * z; }, kAlg.norm(x0), false};
    opt.seed = 900 + static_cast<std::uint64_t>(trial);
    linear_ok += check_majorization(vp, sm, 4.0, opt).passed;
  }
  for (const auto& p : gamma_pairs()) {
    VectorProblem<MatrixAlgebra<double>> vp{kAlg, cbhd_field(kAlg, p.b), p.a, {}};
    vp.domain.b = kTwoPi;
    cbhd_ok += check_majorization(vp, cbhd_majorant(p.q), std::min(1.25 * p.beta, p.beta + 0.5), opt).passed;
  }
  return {linear_ok == 20 && cbhd_ok == 10, fmt::format("linear {}/20, CBHD {}/10", linear_ok, cbhd_ok)};
}

// --- 9 --------------------------------------------------------------------
Outcome separable_lifetime() {
  std::mt19937_64 rng(901);
  int checked = 0;
  double worst = 0.0;
  while (checked < 20) {
    const DomainQuery q{uniform(rng, 0.0, 6.0), uniform(rng, 0.05, 12.0)};
    const double beta = lifetime_bounds(q).beta_tilde;
    if (!(beta > 0.2 && beta < 5.0)) continue;
    ++checked;
    StripDomain d;
    d.b = kTwoPi;
    const auto traj = integrate_scalar(cbhd_majorant(q), d, 2.0 * beta);
    worst = std::max(worst, std::abs(traj.exit_time_estimate - beta) / beta);
  }
  return {worst < 1e-3, fmt::format("max relative gap {:.3g} (< 1e-3)", worst)};
}

// --- 10 -------------------------------------------------------------------
Outcome g_agreement() {
  double worst_g = 0.0, worst_u = 0.0;
  for (int k = 0; k < 200; ++k) {
    const double u = (kTwoPi - 0.1) * k / 199.0;
    const double gap = std::abs(g_series(u, 80) - g_closed(u));
    if (gap > worst_g) {
      worst_g = gap;
      worst_u = u;
    }
  }
  double worst_zeta = 0.0;
  std::size_t worst_k = 0;
  for (std::size_t k = 1; k <= 5; ++k) {
    const double r = zeta_crosscheck(k, 1'000'000);
    if (r > worst_zeta) {
      worst_zeta = r;
      worst_k = k;
    }
  }
  return {worst_g < 1e-12 && worst_zeta < 1e-8,
          fmt::format("max |g_series - g_closed| {:.3g} at u = {:.4f} (< 1e-12); max zeta residual {:.3g} at k = {} "
                      "(< 1e-8)",
                      worst_g, worst_u, worst_zeta, worst_k)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "coefficient suite", 1.0, coefficients},
      {2, "Dynkin recursion equals explicit sum, i+j <= 8", 60.0, dynkin_equivalence},
      {3, "BCH terms equal log(exp x exp y), degree <= 8", 60.0, bch_oracle},
      {4, "Todd operator inverse residual", 30.0, todd_invertibility},
      {5, "group identity exp(phi) = exp(a) exp(b)", 60.0, group_identity},
      {6, "Gamma certificates outside Delta", 300.0, enlarged_domain},
      {7, "psi(1) series vs Runge-Kutta", 60.0, psi_consistency},
      {8, "majorant comparison on linear and CBHD problems", 120.0, majorant_comparison},
      {9, "separable lifetime vs quadrature", 30.0, separable_lifetime},
      {10, "G series vs closed form; zeta cross-check", 5.0, g_agreement},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds < c.budget_s;
    const bool ok = out.ok && in_time;
    failures += !ok;
    fmt::print("{} criterion {}: {} ({}) [{:.2f} s{}]\n", ok ? "PASS" : "FAIL", c.id, c.name, out.detail, seconds,
               in_time ? "" : fmt::format(", over the {:.0f} s budget", c.budget_s));
    std::fflush(stdout);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - static_cast<std::size_t>(failures), criteria.size());
  return failures == 0 ? 0 : 1;
}
