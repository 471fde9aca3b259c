#pragma once

// Adaptive Dormand-Prince 5(4) integrator for linear-algebra valued states
// (Eigen vectors or matrices, real or complex). The fifth-order solution is
// propagated; the embedded fourth-order solution drives step control.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ptgauge/errors.hpp"

namespace ptgauge::numerics {

struct OdeOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double initial_step = 0.0;  // 0: pick from the interval length
  double max_step = 0.0;      // 0: unbounded
  long max_steps = 2'000'000;
};

struct StepStats {
  long accepted = 0;
  long rejected = 0;
  long evaluations = 0;
};

template <class State>
struct OdeSolution {
  std::vector<double> times;
  std::vector<State> states;
  StepStats stats;
};

namespace detail {

template <class State>
double error_norm(const State& err, const State& y0, const State& y1,
                  const OdeOptions& opt) {
  const auto scale = (opt.abs_tol + opt.rel_tol *
                      y0.cwiseAbs().cwiseMax(y1.cwiseAbs()).array()).eval();
  return (err.cwiseAbs().array() / scale).maxCoeff();
}

}  // namespace detail

/// Integrate dy/dt = rhs(t, y) from t0 to t1 (t1 > t0). Every accepted step is
/// recorded, and `observer(t, y)` is called after each one. Throws
/// StepSizeUnderflow if the controller shrinks the step below the resolution
/// of t, or if the state becomes non-finite.
template <class State, class Rhs, class Observer>
OdeSolution<State> dormand_prince(Rhs&& rhs, double t0, double t1, State y0,
                                  const OdeOptions& opt, Observer&& observer) {
  // Butcher tableau.
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                   a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                   b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  OdeSolution<State> sol;
  sol.times.push_back(t0);
  sol.states.push_back(y0);

  const double span = t1 - t0;
  double h = opt.initial_step > 0 ? opt.initial_step : span * 1e-3;
  if (opt.max_step > 0) h = std::min(h, opt.max_step);

  double t = t0;
  State y = y0;
  State k1 = rhs(t, y);
  ++sol.stats.evaluations;

  while (t < t1) {
    if (sol.stats.accepted + sol.stats.rejected >= opt.max_steps) {
      throw StepSizeUnderflow("step budget exhausted at t = " + std::to_string(t));
    }
    if (t + h > t1) h = t1 - t;
    if (h <= 16 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
      throw StepSizeUnderflow("step size underflow at t = " + std::to_string(t));
    }

    const State k2 = rhs(t + c2 * h, (y + h * (a21 * k1)).eval());
    const State k3 = rhs(t + c3 * h, (y + h * (a31 * k1 + a32 * k2)).eval());
    const State k4 = rhs(t + c4 * h, (y + h * (a41 * k1 + a42 * k2 + a43 * k3)).eval());
    const State k5 = rhs(t + c5 * h,
                         (y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)).eval());
    const State k6 = rhs(t + h, (y + h * (a61 * k1 + a62 * k2 + a63 * k3 +
                                          a64 * k4 + a65 * k5)).eval());
    const State y_new =
        (y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6)).eval();
    const State k7 = rhs(t + h, y_new);
    sol.stats.evaluations += 6;

    const State err =
        (h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7)).eval();
    const double en = detail::error_norm(err, y, y_new, opt);
    if (!std::isfinite(en)) {
      throw StepSizeUnderflow("non-finite state at t = " + std::to_string(t));
    }

    if (en <= 1.0) {
      t = (t + h >= t1) ? t1 : t + h;
      y = y_new;
      k1 = k7;
      ++sol.stats.accepted;
      sol.times.push_back(t);
      sol.states.push_back(y);
      observer(t, y);
    } else {
      ++sol.stats.rejected;
    }
    const double factor =
        en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
    h *= (en <= 1.0) ? factor : std::min(factor, 1.0);
    if (opt.max_step > 0) h = std::min(h, opt.max_step);
  }
  return sol;
}

template <class State, class Rhs>
OdeSolution<State> dormand_prince(Rhs&& rhs, double t0, double t1, State y0,
                                  const OdeOptions& opt) {
  return dormand_prince(std::forward<Rhs>(rhs), t0, t1, std::move(y0), opt,
                        [](double, const State&) {});
}

}  // namespace ptgauge::numerics
