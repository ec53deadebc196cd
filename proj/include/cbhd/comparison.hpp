#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>

#include "cbhd/ode.hpp"

namespace cbhd {

/// A normed space that can produce a random element of a given norm; used
/// to sample the majorization hypothesis.
template <typename S>
concept SampledNormedSpace = requires(const S& space, const typename S::Element& e, std::mt19937_64& rng) {
  typename S::Element;
  { space.norm(e) } -> std::convertible_to<double>;
  { space.random(rng, 1.0) } -> std::convertible_to<typename S::Element>;
};

/// y' = f(t, y), y(0) = initial on (-T, T) x D(0, b).
template <SampledNormedSpace S>
struct VectorProblem {
  using Element = typename S::Element;
  S space;
  std::function<Element(double, const Element&)> field;
  Element initial;
  StripDomain domain;
};

/// z' = g(|t|, z), z(0) = initial on (-T, T) x (a, b). g should be
/// nondecreasing in z and satisfy |f(t, y)| <= g(|t|, |y|) (strictly, if
/// `strict`).
struct ScalarMajorant {
  std::function<double(double, double)> g;
  double initial = 0.0;
  bool strict = false;
};

struct MajorizationOptions {
  double grid_tol = 1e-8;        // allowed |phi(t_k)| - psi(t_k)
  double lifetime_slack = 1e-3;  // allowed scalar_exit - vector_exit
  double sample_slack = 1e-12;   // relative slack on sampled (MJ); none when strict
  int sample_times = 30;
  int sample_directions = 30;
  std::uint64_t seed = 20240607;
  bool backward = false;         // run the reflected problem -f(-t, y)
  IntegratorOptions integrator;
};

template <typename Element>
struct MajorizationReport {
  double sampled_max_excess = -std::numeric_limits<double>::infinity();
  double max_excess = -std::numeric_limits<double>::infinity();  // max |phi(t_k)| - psi(t_k)
  double min_margin = std::numeric_limits<double>::infinity();   // min psi - |phi| for t_k > 0
  std::size_t shared_points = 0;
  double scalar_exit = 0.0;
  double vector_exit = 0.0;
  bool domination_ok = false;
  bool lifetime_ok = false;
  bool passed = false;
  Trajectory<double> scalar;
  Trajectory<Element> vector;
};

inline double scalar_margin(const StripDomain& d, double margin, double z) {
  const double upper = std::isfinite(d.b) ? d.b * (1.0 - margin) - z : std::numeric_limits<double>::infinity();
  const double lower = std::isfinite(d.a) ? z - d.a * (1.0 - margin) : std::numeric_limits<double>::infinity();
  return std::min(upper, lower);
}

template <SampledNormedSpace S>
Trajectory<typename S::Element> integrate_vector(const VectorProblem<S>& p, double horizon,
                                                 const IntegratorOptions& opt = {},
                                                 std::vector<double> stops = {}) {
  const double b = p.domain.b;
  const double m = opt.exit_margin;
  auto margin = [&](const typename S::Element& y) {
    return std::isfinite(b) ? b * (1.0 - m) - p.space.norm(y) : std::numeric_limits<double>::infinity();
  };
  auto field = [&](double t, const typename S::Element& y) { return p.field(t, y); };
  return integrate(field, margin, p.initial, std::min(horizon, p.domain.T), opt, std::move(stops));
}

inline Trajectory<double> integrate_scalar(const ScalarMajorant& g, const StripDomain& domain, double horizon,
                                           const IntegratorOptions& opt = {}) {
  auto margin = [&](double z) { return scalar_margin(domain, opt.exit_margin, z); };
  auto field = [&](double t, double z) { return g.g(std::abs(t), z); };
  return integrate(field, margin, g.initial, std::min(horizon, domain.T), opt);
}

/// Samples (MJ) and the monotonicity of g, integrates both problems on a
/// shared grid and compares norms and lifetimes. A sampled violation of the
/// hypotheses throws MajorantViolation instead of producing a report.
template <SampledNormedSpace S>
MajorizationReport<typename S::Element> check_majorization(VectorProblem<S> vp, ScalarMajorant sm, double horizon,
                                                           const MajorizationOptions& opt = {}) {
  using Element = typename S::Element;
  if (opt.backward) {
    auto f = vp.field;
    vp.field = [f](double t, const Element& y) -> Element { return -f(-t, y); };
  }
  const double t_max = std::min(horizon, vp.domain.T);
  const double x_norm = vp.space.norm(vp.initial);
  const double r_max = std::isfinite(vp.domain.b) ? vp.domain.b : 10.0 * (1.0 + x_norm);

  MajorizationReport<Element> report;
  const auto violates = [&](double lhs, double g) {
    return sm.strict ? !(lhs < g) : lhs - g > opt.sample_slack * std::max(1.0, std::abs(g));
  };

  std::mt19937_64 rng(opt.seed);
  for (int k = 0; k < opt.sample_times; ++k) {
    const double t = opt.sample_times > 1 ? t_max * k / (opt.sample_times - 1) : 0.0;
    double g_prev = -std::numeric_limits<double>::infinity();
    for (int d = 0; d < opt.sample_directions; ++d) {
      const double r = r_max * (d + 0.5) / opt.sample_directions;
      const Element y = vp.space.random(rng, r);
      const double ny = vp.space.norm(y);
      const double g = sm.g(t, ny);
      if (g < g_prev - opt.sample_slack * std::max(1.0, std::abs(g_prev))) {
        throw Error(ErrorCode::MajorantViolation, "g is not nondecreasing in z at t = " + std::to_string(t));
      }
      g_prev = g;
      double nf = 0.0;
      try {
        nf = vp.space.norm(vp.field(t, y));
      } catch (const Error& e) {
        if (is_domain_error(e)) continue;
        throw;
      }
      report.sampled_max_excess = std::max(report.sampled_max_excess, nf - g);
      if (violates(nf, g)) {
        throw Error(ErrorCode::MajorantViolation, "sampled |f(t,y)| exceeds g(|t|,|y|) at t = " + std::to_string(t));
      }
    }
  }

  report.scalar = integrate_scalar(sm, vp.domain, t_max, opt.integrator);
  report.vector = integrate_vector(vp, t_max, opt.integrator, report.scalar.grid);

  for (std::size_t k = 0; k < report.vector.grid.size(); ++k) {
    const double t = report.vector.grid[k];
    const Element& y = report.vector.values[k];
    const double ny = vp.space.norm(y);
    const double nf = vp.space.norm(vp.field(t, y));
    const double g = sm.g(t, ny);
    report.sampled_max_excess = std::max(report.sampled_max_excess, nf - g);
    if (violates(nf, g)) {
      throw Error(ErrorCode::MajorantViolation, "|f| exceeds g along the trajectory at t = " + std::to_string(t));
    }
    const auto it = std::lower_bound(report.scalar.grid.begin(), report.scalar.grid.end(), t);
    if (it == report.scalar.grid.end() || *it != t) continue;
    const double psi = report.scalar.values[static_cast<std::size_t>(it - report.scalar.grid.begin())];
    ++report.shared_points;
    report.max_excess = std::max(report.max_excess, ny - psi);
    if (t > 0.0) report.min_margin = std::min(report.min_margin, psi - ny);
  }

  report.scalar_exit = report.scalar.exit_time_estimate;
  report.vector_exit = report.vector.exit_time_estimate;
  report.domination_ok = report.max_excess <= opt.grid_tol;
  report.lifetime_ok = report.scalar_exit <= report.vector_exit + opt.lifetime_slack;
  report.passed = report.domination_ok && report.lifetime_ok;
  return report;
}

}  // namespace cbhd
