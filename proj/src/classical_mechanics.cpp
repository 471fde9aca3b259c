#include "ptgauge/classical_mechanics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "ptgauge/errors.hpp"
#include "ptgauge/numerics/quadrature.hpp"
#include "ptgauge/quantum_dynamics.hpp"

namespace ptgauge {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

// Map coefficients as functions of the drive phase phi and the map angle.
CanonicalMatrix matrix_at_phase(double phi, double theta) {
  const double a = std::sin(phi), b = std::cos(phi);
  const double s = std::sin(0.5 * theta), c = std::cos(0.5 * theta);
  return {c - kI * a * s, kI * b * s, kI * b * s, c + kI * a * s};
}

// d/dphi of matrix_at_phase.
CanonicalMatrix matrix_dphi(double phi, double theta) {
  const double a = std::sin(phi), b = std::cos(phi);
  const double s = std::sin(0.5 * theta);
  return {-kI * b * s, -kI * a * s, -kI * a * s, kI * b * s};
}

}  // namespace

Complex classical_hamiltonian(const ComplexPhasePoint& z, const ModelParams& params) {
  const double phi = params.drive * z.t;
  const double w = params.omega_cap / 4.0, g = params.coupling;
  return (w + kI * (g / 2.0) * std::sin(phi)) * z.x * z.x +
         (w - kI * (g / 2.0) * std::sin(phi)) * z.p * z.p -
         kI * g * std::cos(phi) * z.x * z.p;
}

std::pair<Complex, Complex> hamilton_rhs(const ComplexPhasePoint& z, const ModelParams& params) {
  const double phi = params.drive * z.t;
  const double w = params.omega_cap / 4.0, g = params.coupling;
  const Complex dh_dp = 2.0 * (w - kI * (g / 2.0) * std::sin(phi)) * z.p - kI * g * std::cos(phi) * z.x;
  const Complex dh_dx = 2.0 * (w + kI * (g / 2.0) * std::sin(phi)) * z.x - kI * g * std::cos(phi) * z.p;
  return {dh_dp, -dh_dx};
}

CanonicalMatrix canonical_matrix(double t, const GaugeSolution& gauge) {
  return matrix_at_phase(gauge.phase(t), gauge.eta_classical());
}

CanonicalMatrix canonical_matrix_dt(double t, const GaugeSolution& gauge) {
  const CanonicalMatrix d = matrix_dphi(gauge.phase(t), gauge.eta_classical());
  const double w = gauge.drive;
  return {w * d.xx, w * d.xp, w * d.px, w * d.pp};
}

std::pair<Complex, Complex> canonical_map(Complex X, Complex P, double t,
                                          const GaugeSolution& gauge) {
  const CanonicalMatrix m = canonical_matrix(t, gauge);
  return {m.xx * X + m.xp * P, m.px * X + m.pp * P};
}

std::pair<Complex, Complex> inverse_canonical_map(Complex x, Complex p, double t,
                                                  const GaugeSolution& gauge) {
  const CanonicalMatrix m = canonical_matrix(t, gauge);
  const Complex det = m.determinant();
  return {(m.pp * x - m.xp * p) / det, (-m.px * x + m.xx * p) / det};
}

Complex generating_function(Complex X, Complex P, double t, const GaugeSolution& gauge) {
  const double phi = gauge.phase(t), theta = gauge.eta_classical();
  const double a = std::sin(phi), b = std::cos(phi);
  const double s2 = std::pow(std::sin(0.5 * theta), 2), st = std::sin(theta);
  return (-kI * (b / 2.0) * st - a * b * s2) * X * X / 2.0 + b * b * s2 * X * P +
         (-kI * (b / 2.0) * st + a * b * s2) * P * P / 2.0;
}

GeneratingGradient generating_gradient(Complex X, Complex P, double t,
                                       const GaugeSolution& gauge) {
  const double phi = gauge.phase(t), theta = gauge.eta_classical(), w = gauge.drive;
  const double a = std::sin(phi), b = std::cos(phi);
  const double s2 = std::pow(std::sin(0.5 * theta), 2), st = std::sin(theta);
  const Complex cxx = -kI * (b / 2.0) * st - a * b * s2;
  const Complex cpp = -kI * (b / 2.0) * st + a * b * s2;
  // d/dt: b' = -w a, (a b)' = w (b^2 - a^2), (b^2)' = -2 w a b.
  const Complex dxx = kI * (w * a / 2.0) * st - w * (b * b - a * a) * s2;
  const Complex dpp = kI * (w * a / 2.0) * st + w * (b * b - a * a) * s2;
  const double dxp = -2.0 * w * a * b * s2;
  return {cxx * X + b * b * s2 * P, b * b * s2 * X + cpp * P,
          dxx * X * X / 2.0 + dxp * X * P + dpp * P * P / 2.0};
}

double verify_gauge_equivalence(const ModelParams& params, const GaugeSolution& gauge,
                                int samples, std::uint64_t seed) {
  params.validate();
  if (samples < 1) throw InvalidArgument("samples must be at least 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> time(0.0, gauge.period);
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    const Complex X(unit(rng), unit(rng)), P(unit(rng), unit(rng));
    const double t = time(rng);
    // Kernel dynamics H' = Gamma/2 (X^2 + P^2).
    const Complex h_new = 0.5 * gauge.gamma * (X * X + P * P);
    const Complex xdot_new = gauge.gamma * P, pdot_new = -gauge.gamma * X;
    // Chain rule through the map, including its explicit time dependence.
    const auto [x, p] = canonical_map(X, P, t, gauge);
    const CanonicalMatrix m = canonical_matrix(t, gauge);
    const CanonicalMatrix mt = canonical_matrix_dt(t, gauge);
    const Complex xdot = m.xx * xdot_new + m.xp * pdot_new + mt.xx * X + mt.xp * P;
    const Complex h_old = classical_hamiltonian({x, p, t}, params);
    const GeneratingGradient f = generating_gradient(X, P, t, gauge);
    const Complex df = f.dX * xdot_new + f.dP * pdot_new + f.dt;
    const Complex residual = P * xdot_new - h_new - (p * xdot - h_old) - df;
    worst = std::max(worst, std::abs(residual));
  }
  return worst;
}

QuadraticForm transformed_form(const ModelParams& params, const GaugeSolution& gauge, double t) {
  auto value = [&](Complex X, Complex P) {
    const auto [x, p] = canonical_map(X, P, t, gauge);
    const CanonicalMatrix mt = canonical_matrix_dt(t, gauge);
    const Complex xt = mt.xx * X + mt.xp * P;
    return classical_hamiltonian({x, p, t}, params) - p * xt - generating_gradient(X, P, t, gauge).dt;
  };
  const Complex fx = value(1.0, 0.0), fp = value(0.0, 1.0), fxp = value(1.0, 1.0);
  return {fx, fp, fxp - fx - fp};
}

TransformedHamiltonian transformed_hamiltonian(const ModelParams& params,
                                               const GaugeSolution& gauge,
                                               std::vector<double> times, double tol) {
  params.validate();
  if (times.empty()) times = {0.0, gauge.period / 7.0, gauge.period / 3.0};
  TransformedHamiltonian out;
  out.times = times;
  const double half = 0.5 * gauge.gamma;
  const double limit = tol * std::max(1.0, std::abs(gauge.gamma));
  for (double t : times) {
    const QuadraticForm f = transformed_form(params, gauge, t);
    out.forms.push_back(f);
    const double dxx = std::abs(f.xx - half), dpp = std::abs(f.pp - half), dxp = std::abs(f.xp);
    out.max_deviation = std::max({out.max_deviation, dxx, dpp, dxp});
    const char* worst = dxx >= dpp && dxx >= dxp ? "X^2" : (dpp >= dxp ? "P^2" : "XP");
    if (std::max({dxx, dpp, dxp}) > limit) {
      throw CoefficientMismatch(std::string("transformed Hamiltonian ") + worst +
                                " coefficient deviates from (Gamma/2, Gamma/2, 0) by " +
                                std::to_string(std::max({dxx, dpp, dxp})) + " at t = " +
                                std::to_string(t));
    }
  }
  out.gamma = 2.0 * out.forms.front().xx.real();
  return out;
}

std::pair<double, double> action_angle_map(const ActionAngle& aa) {
  if (!(aa.action >= 0.0)) throw InvalidArgument("action must be non-negative");
  const double r = std::sqrt(2.0 * aa.action);
  return {r * std::sin(aa.angle), r * std::cos(aa.angle)};
}

Complex hannay_bracket(const GaugeSolution& gauge, double action, double tol, int* panels) {
  static const numerics::GaussRule rule = numerics::gauss_legendre(16);
  const double theta_map = gauge.eta_classical();
  auto integrate = [&](int k) {
    const double width = 2.0 * kPi / k;
    Complex sum(0.0);
    for (int i = 0; i < k; ++i) {
      for (std::size_t a = 0; a < rule.nodes.size(); ++a) {
        const double angle = width * (i + 0.5 * (rule.nodes[a] + 1.0));
        const auto [X, P] = action_angle_map({action, angle});
        for (int j = 0; j < k; ++j) {
          for (std::size_t b = 0; b < rule.nodes.size(); ++b) {
            const double phi = width * (j + 0.5 * (rule.nodes[b] + 1.0));
            const CanonicalMatrix m = matrix_at_phase(phi, theta_map);
            const CanonicalMatrix d = matrix_dphi(phi, theta_map);
            const Complex p = m.px * X + m.pp * P;
            const Complex dx = d.xx * X + d.xp * P;
            sum += rule.weights[a] * rule.weights[b] * p * dx;
          }
        }
      }
    }
    return sum * (0.25 * width * width) / (2.0 * kPi);
  };
  Complex prev = integrate(1);
  for (int k = 2; k <= 64; k *= 2) {
    const Complex cur = integrate(k);
    if (std::abs(cur - prev) < tol) {
      if (panels) *panels = k;
      return cur;
    }
    prev = cur;
  }
  throw QuadratureNotConverged("Hannay bracket did not converge with 64 panels per dimension");
}

HannayQuadrature hannay_angle_quadrature(const ModelParams& params, const GaugeSolution& gauge,
                                         double tol) {
  params.validate();
  HannayQuadrature out;
  out.bracket1 = hannay_bracket(gauge, 1.0, tol, &out.panels);
  out.bracket2 = hannay_bracket(gauge, 2.0, tol);
  out.bracket3 = hannay_bracket(gauge, 3.0, tol);
  const Complex slope = out.bracket2 - out.bracket1;
  out.dtheta = -slope.real();
  out.imag_residual = std::abs(slope.imag());
  out.linearity_residual = std::max(std::abs(out.bracket2 - 2.0 * out.bracket1),
                                    std::abs(out.bracket3 - 3.0 * out.bracket1));
  return out;
}

double hannay_angle_closed(const GaugeSolution& gauge) { return kPi * (gauge.cos_eta - 1.0); }

HannayResult correspondence_check(const ModelParams& params, int n, const CutoffPolicy& policy) {
  if (n < 0) throw InvalidArgument("Fock index must be non-negative");
  const GaugeSolution gauge = solve_auxiliary(params);
  HannayResult out;
  out.n = n;
  out.branch = gauge.branch;
  FockSpace space(4);
  if (gauge.normalizable()) {
    space = certify_cutoff(gauge, n + 1, policy);
    out.cutoff = space.cutoff();
  }
  // Rounding in the Fock-space integrand scales with the conditioning the
  // policy admitted, so the quadrature target follows the assertion tolerance.
  out.gamma_n = berry_phase_quadrature(params, gauge, n, space, 1e-2 * policy.assertion_tol).value;
  out.dtheta_closed = hannay_angle_closed(gauge);
  out.dtheta_quadrature = hannay_angle_quadrature(params, gauge).dtheta;
  const double weight = n + 0.5;
  out.correspondence_residual = out.gamma_n + weight * out.dtheta_quadrature;
  out.magnitude_residual = std::abs(std::abs(out.gamma_n) - weight * std::abs(out.dtheta_quadrature));
  const double product = out.gamma_n * out.dtheta_quadrature;
  if (std::abs(out.gamma_n) > 1e-12 && std::abs(out.dtheta_quadrature) > 1e-12) {
    out.realized_sign = product > 0.0 ? 1 : -1;
  }
  return out;
}

Trajectory integrate_trajectory(const ModelParams& params, const GaugeSolution& gauge,
                                const ComplexPhasePoint& z0, double t1, double tol) {
  params.validate();
  if (!(t1 > z0.t)) throw InvalidArgument("trajectory requires t1 > t0");
  using State = Eigen::Vector2cd;
  numerics::OdeOptions opt;
  opt.rel_tol = tol;
  opt.abs_tol = tol * 1e-2;
  auto rhs = [&](double t, const State& y) -> State {
    const auto [dx, dp] = hamilton_rhs({y(0), y(1), t}, params);
    return State(dx, dp);
  };
  const auto [X0, P0] = inverse_canonical_map(z0.x, z0.p, z0.t, gauge);
  const Complex j0 = X0 * X0 + P0 * P0;

  Trajectory out;
  out.points.push_back(z0);
  auto observer = [&](double t, const State& y) {
    out.points.push_back({y(0), y(1), t});
    const auto [X, P] = inverse_canonical_map(y(0), y(1), t, gauge);
    out.invariant_drift = std::max(out.invariant_drift, std::abs(X * X + P * P - j0));
  };
  const auto sol = numerics::dormand_prince<State>(rhs, z0.t, t1, State(z0.x, z0.p), opt, observer);
  out.stats = sol.stats;

  const double angle = gauge.gamma * (t1 - z0.t);
  const Complex X1 = X0 * std::cos(angle) + P0 * std::sin(angle);
  const Complex P1 = -X0 * std::sin(angle) + P0 * std::cos(angle);
  const auto [x1, p1] = canonical_map(X1, P1, t1, gauge);
  out.analytic_endpoint = {x1, p1, t1};
  const ComplexPhasePoint& end = out.points.back();
  out.endpoint_error = std::max(std::abs(end.x - x1), std::abs(end.p - p1));
  return out;
}

}  // namespace ptgauge
