#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <string_view>
#include <vector>

#include "cbhd/error.hpp"

namespace cbhd {

enum class ExitReason { Horizon, DomainExit, StepUnderflow };

constexpr std::string_view to_string(ExitReason r) {
  switch (r) {
    case ExitReason::Horizon: return "HORIZON";
    case ExitReason::DomainExit: return "DOMAIN_EXIT";
    case ExitReason::StepUnderflow: return "STEP_UNDERFLOW";
  }
  return "HORIZON";
}

/// (-T, T) x D(0, b) for vector problems; (-T, T) x (a, b) for scalar ones.
struct StripDomain {
  double T = std::numeric_limits<double>::infinity();
  double a = -std::numeric_limits<double>::infinity();
  double b = std::numeric_limits<double>::infinity();
};

struct IntegratorOptions {
  double rtol = 1e-9;
  double atol = 1e-12;
  double safety = 0.9;
  double min_factor = 0.2;
  double max_factor = 5.0;
  double exit_margin = 1e-9;    // relative: exit once |y| >= b (1 - exit_margin)
  double bisection_tol = 1e-10; // absolute, on the exit time
  double underflow = 1e-12;     // step < underflow * max(1, |t|) ends the run
  double initial_step = 0.0;    // 0: chosen from the horizon
  std::size_t max_steps = 2'000'000;

  /// rtol = tol, atol = tol * 1e-3.
  static IntegratorOptions from_tol(double tol) {
    IntegratorOptions o;
    o.rtol = tol;
    o.atol = tol * 1e-3;
    return o;
  }
};

template <typename State>
struct Trajectory {
  std::vector<double> grid;
  std::vector<State> values;
  /// Dense-output value at the middle of each step; size grid.size() - 1.
  std::vector<State> midpoints;
  ExitReason exit_reason = ExitReason::Horizon;
  double exit_time_estimate = 0.0;
  std::size_t rejected_steps = 0;
};

namespace detail {

inline bool all_finite(double v) { return std::isfinite(v); }
template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& v) {
  return v.allFinite();
}

inline double scaled_error(double err, double y0, double y1, double atol, double rtol) {
  return std::abs(err) / (atol + rtol * std::max(std::abs(y0), std::abs(y1)));
}
template <typename Derived>
double scaled_error(const Eigen::MatrixBase<Derived>& err, const Eigen::MatrixBase<Derived>& y0,
                    const Eigen::MatrixBase<Derived>& y1, double atol, double rtol) {
  const auto scale = (atol + rtol * y0.cwiseAbs().cwiseMax(y1.cwiseAbs()).array());
  return static_cast<double>((err.cwiseAbs().array() / scale).maxCoeff());
}

// Dormand-Prince 5(4).
struct DP {
  static constexpr std::array<double, 7> c{0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
  // Quartic dense output (Shampine); rows are stages, columns theta^1..theta^4.
  static constexpr double P[7][4] = {
      {1.0, -8048581381.0 / 2820520608, 8663915743.0 / 2820520608, -12715105075.0 / 11282082432},
      {0.0, 0.0, 0.0, 0.0},
      {0.0, 131558114200.0 / 32700410799, -68118460800.0 / 10900136933, 87487479700.0 / 32700410799},
      {0.0, -1754552775.0 / 470086768, 14199869525.0 / 1410260304, -10690763975.0 / 1880347072},
      {0.0, 127303824393.0 / 49829197408, -318862633887.0 / 49829197408, 701980252875.0 / 199316789632},
      {0.0, -282668133.0 / 205662961, 2019193451.0 / 616988883, -1453857185.0 / 822651844},
      {0.0, 40617522.0 / 29380423, -110615467.0 / 29380423, 69997945.0 / 29380423}};

  static double dense_weight(int stage, double theta) {
    const auto& p = P[stage];
    return theta * (p[0] + theta * (p[1] + theta * (p[2] + theta * p[3])));
  }
};

template <typename State>
struct StepResult {
  State y;
  State error;
  State mid;
  State k7;
};

template <typename State, typename Field>
StepResult<State> dopri_step(Field& f, double t, const State& y, const State& k1, double h) {
  using D = DP;
  const State k2 = f(t + D::c[1] * h, State(y + h * (D::a21 * k1)));
  const State k3 = f(t + D::c[2] * h, State(y + h * (D::a31 * k1 + D::a32 * k2)));
  const State k4 = f(t + D::c[3] * h, State(y + h * (D::a41 * k1 + D::a42 * k2 + D::a43 * k3)));
  const State k5 =
      f(t + D::c[4] * h, State(y + h * (D::a51 * k1 + D::a52 * k2 + D::a53 * k3 + D::a54 * k4)));
  const State k6 = f(t + D::c[5] * h,
                     State(y + h * (D::a61 * k1 + D::a62 * k2 + D::a63 * k3 + D::a64 * k4 + D::a65 * k5)));
  State y1 = y + h * (D::b1 * k1 + D::b3 * k3 + D::b4 * k4 + D::b5 * k5 + D::b6 * k6);
  State k7 = f(t + h, y1);
  State err = h * (D::e1 * k1 + D::e3 * k3 + D::e4 * k4 + D::e5 * k5 + D::e6 * k6 + D::e7 * k7);
  const double w[7] = {D::dense_weight(0, 0.5), 0.0, D::dense_weight(2, 0.5), D::dense_weight(3, 0.5),
                       D::dense_weight(4, 0.5), D::dense_weight(5, 0.5), D::dense_weight(6, 0.5)};
  State mid = y + h * (w[0] * k1 + w[2] * k3 + w[3] * k4 + w[4] * k5 + w[5] * k6 + w[6] * k7);
  return {std::move(y1), std::move(err), std::move(mid), std::move(k7)};
}

}  // namespace detail

/// Adaptive Dormand-Prince integration of y' = f(t, y), y(0) = x0 on
/// [0, horizon] while margin(y) > 0. Stage evaluations that throw a domain
/// error (NormTooLarge, OutOfRange) or produce non-finite values count as
/// rejected steps. The grid lands exactly on every time in `stops`.
template <typename State, typename Field, typename Margin>
Trajectory<State> integrate(Field&& f, Margin&& margin, const State& x0, double horizon,
                            const IntegratorOptions& opt = {}, std::vector<double> stops = {}) {
  if (!(margin(x0) > 0.0)) throw Error(ErrorCode::BadInitial, "initial value outside the domain");
  if (!(horizon >= 0.0)) throw Error(ErrorCode::InvalidArgument, "horizon must be nonnegative");

  Trajectory<State> traj;
  traj.grid.push_back(0.0);
  traj.values.push_back(x0);
  if (horizon == 0.0) return traj;

  std::erase_if(stops, [&](double s) { return !(s > 0.0 && s < horizon); });
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());
  stops.push_back(horizon);

  double t = 0.0;
  State y = x0;
  State k1 = f(t, y);
  double h = opt.initial_step > 0.0 ? opt.initial_step : std::min(1e-3 * std::max(1.0, horizon), horizon);
  std::size_t next_stop = 0;

  const auto is_domain_failure = [](const Error& e) { return is_domain_error(e); };

  bool pushed_out = false;

  for (std::size_t steps = 0;; ++steps) {
    if (steps >= opt.max_steps) throw Error(ErrorCode::IntegrationFailure, "step budget exhausted");
    if (h < opt.underflow * std::max(1.0, std::abs(t))) {
      // Steps that keep failing because they leave the domain mean the
      // solution has reached its boundary at a singularity of f.
      traj.exit_reason = pushed_out ? ExitReason::DomainExit : ExitReason::StepUnderflow;
      traj.exit_time_estimate = t;
      return traj;
    }
    const double target = stops[next_stop];
    const bool landing = t + h >= target - 1e-14 * std::max(1.0, std::abs(target));
    const double step = landing ? target - t : h;

    detail::StepResult<State> r;
    double err = std::numeric_limits<double>::infinity();
    bool stage_failed = false;
    try {
      r = detail::dopri_step<State>(f, t, y, k1, step);
      if (detail::all_finite(r.y) && detail::all_finite(r.error) && detail::all_finite(r.k7)) {
        err = detail::scaled_error(r.error, y, r.y, opt.atol, opt.rtol);
      }
    } catch (const Error& e) {
      if (!is_domain_failure(e)) throw;
      stage_failed = true;
    }
    if (!std::isfinite(err)) {
      ++traj.rejected_steps;
      pushed_out = stage_failed;
      h = 0.25 * step;
      continue;
    }
    if (err > 1.0) {
      ++traj.rejected_steps;
      pushed_out = !(margin(r.y) > 0.0);
      h = step * std::max(opt.min_factor, opt.safety * std::pow(err, -0.2));
      continue;
    }

    if (!(margin(r.y) > 0.0)) {
      // Bisect on the step length for the first crossing of the margin.
      double lo = 0.0, hi = step;
      detail::StepResult<State> inside;
      bool have_inside = false;
      while (hi - lo > opt.bisection_tol) {
        const double m = 0.5 * (lo + hi);
        bool ok = false;
        try {
          auto trial = detail::dopri_step<State>(f, t, y, k1, m);
          ok = detail::all_finite(trial.y) && margin(trial.y) > 0.0;
          if (ok) {
            inside = std::move(trial);
            have_inside = true;
          }
        } catch (const Error& e) {
          if (!is_domain_failure(e)) throw;
        }
        (ok ? lo : hi) = m;
      }
      if (have_inside && lo > 0.0) {
        traj.grid.push_back(t + lo);
        traj.values.push_back(inside.y);
        traj.midpoints.push_back(inside.mid);
      }
      traj.exit_reason = ExitReason::DomainExit;
      traj.exit_time_estimate = t + hi;
      return traj;
    }

    pushed_out = false;
    t = landing ? target : t + step;
    y = r.y;
    k1 = r.k7;
    traj.grid.push_back(t);
    traj.values.push_back(y);
    traj.midpoints.push_back(r.mid);
    const double factor =
        err == 0.0 ? opt.max_factor : std::clamp(opt.safety * std::pow(err, -0.2), opt.min_factor, opt.max_factor);
    h = landing ? std::max(h, step * factor) : step * factor;
    if (landing) {
      if (++next_stop == stops.size()) {
        traj.exit_reason = ExitReason::Horizon;
        traj.exit_time_estimate = horizon;
        return traj;
      }
    }
  }
}

/// max_k | y(t_k) - x - int_0^{t_k} f(u, y(u)) du |, the integral by
/// Simpson's rule on each step using the stored midpoints.
template <typename State, typename Field, typename Norm>
double volterra_residual(const Trajectory<State>& traj, Field&& f, Norm&& norm) {
  if (traj.values.empty()) return 0.0;
  const State& x = traj.values.front();
  State integral = x - x;
  double worst = 0.0;
  State f_left = f(traj.grid[0], x);
  for (std::size_t k = 0; k + 1 < traj.grid.size(); ++k) {
    const double h = traj.grid[k + 1] - traj.grid[k];
    const State f_mid = f(traj.grid[k] + 0.5 * h, traj.midpoints[k]);
    State f_right = f(traj.grid[k + 1], traj.values[k + 1]);
    integral = integral + (h / 6.0) * (f_left + 4.0 * f_mid + f_right);
    worst = std::max(worst, static_cast<double>(norm(State(traj.values[k + 1] - x - integral))));
    f_left = std::move(f_right);
  }
  return worst;
}

/// int_{z0}^{z_max} du / g(u) by adaptive Simpson; g must be positive on
/// [z0, z_max). At z_max a domain error or infinite g counts as 1/g = 0.
/// Throws NonPositiveField if g <= 0 at any of 1000 sample points.
double separable_exit_time(const std::function<double(double)>& g, double z0, double z_max,
                           double abs_tol = 1e-10);

}  // namespace cbhd
