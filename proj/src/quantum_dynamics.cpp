#include "ptgauge/quantum_dynamics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ptgauge/errors.hpp"
#include "ptgauge/numerics/expm.hpp"
#include "ptgauge/numerics/quadrature.hpp"

namespace ptgauge {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

void require_state_range(int n, const FockSpace& space) {
  if (n < 0 || n >= space.interior()) {
    throw InvalidArgument("Fock index " + std::to_string(n) + " outside the interior [0, " +
                          std::to_string(space.interior()) + ")");
  }
}

void require_normalizable(const GaugeSolution& gauge) {
  if (!gauge.normalizable()) {
    throw CutoffNotConverged("gauge-solution states are not normalizable on this branch (cos eta = " +
                             std::to_string(gauge.cos_eta) + ")");
  }
}

// Diagonal Fock element <n| x Sz + y S+ + z S- |n> = x (n + 1/2) / 2.
Complex diagonal_element(const AlgebraElement& a, int n) { return a.sz * (0.5 * (n + 0.5)); }

}  // namespace

CVector kernel_eigenstate(int n, const FockSpace& space) {
  require_state_range(n, space);
  CVector e = CVector::Zero(space.cutoff());
  e(n) = 1.0;
  return e;
}

BiorthogonalState gauge_solution_state(const ModelParams& params,
                                       const GaugeSolution& gauge, int n, double t,
                                       const FockSpace& space) {
  params.validate();
  require_normalizable(gauge);
  if (n < 0 || n >= space.interior()) {
    throw CutoffNotConverged("state " + std::to_string(n) + " lies in the boundary margin of cutoff " +
                             std::to_string(space.cutoff()));
  }
  const Complex phase = std::polar(1.0, -(n + 0.5) * gauge.gamma * t);
  BiorthogonalState s;
  s.ket = phase * transformation_column(gauge, t, n, space.cutoff(), true);
  s.bra = phase * transformation_column(gauge, t, n, space.cutoff(), false);
  s.label = n;
  s.time = t;
  return s;
}

Complex biorthogonal_product(const CVector& bra, const CVector& ket) {
  if (bra.size() != ket.size()) throw DimensionMismatch("bra and ket lengths differ");
  return bra.dot(ket);
}

CMatrix gram_matrix(const std::vector<BiorthogonalState>& states) {
  const auto k = static_cast<Eigen::Index>(states.size());
  CMatrix g(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) g(i, j) = biorthogonal_product(states[i].bra, states[j].ket);
  }
  return g;
}

OperatorMatrix metric_operator(const ModelParams& params, const GaugeSolution& gauge,
                               double t, const FockSpace& space) {
  params.validate();
  require_normalizable(gauge);
  return {space, lift(hyperbolic_normal_order(-gauge.eta, gauge.phase(t)), space.cutoff())};
}

CVector apply_metric(const GaugeSolution& gauge, double t, const CVector& v) {
  const NormalOrdered r = transformation_factors(gauge, t, false);
  return lift_apply(r, lift_apply(r, v));
}

CVector apply_hamiltonian(const ModelParams& params, double t, const CVector& psi) {
  const auto n = psi.size();
  const Complex up = params.coupling * std::polar(1.0, params.drive * t);
  const Complex down = -params.coupling * std::polar(1.0, -params.drive * t);
  CVector out(n);
  for (Eigen::Index m = 0; m < n; ++m) {
    Complex v = params.omega_cap * 0.5 * (m + 0.5) * psi(m);
    if (m >= 2) v += up * (0.5 * std::sqrt(double(m) * double(m - 1))) * psi(m - 2);
    if (m + 2 < n) v += down * (0.5 * std::sqrt(double(m + 1) * double(m + 2))) * psi(m + 2);
    out(m) = v;
  }
  return out;
}

PropagatorPath evolve_propagator(const ModelParams& params, double t0, double t1,
                                 double rel_tol, double abs_tol) {
  params.validate();
  if (!(t1 > t0)) throw InvalidArgument("evolution requires t1 > t0");
  numerics::OdeOptions opt;
  opt.rel_tol = rel_tol;
  opt.abs_tol = abs_tol;
  // Keep steps short enough that the square root of d can be continued.
  opt.max_step = (2.0 * kPi / params.drive) / 64.0;
  auto rhs = [&](double t, const Mat2& m) -> Mat2 {
    return -kI * to_defining(hamiltonian_element(params, t)) * m;
  };
  PropagatorPath path;
  path.times.push_back(t0);
  path.propagators.push_back(Mat2::Identity());
  path.sqrt_d.push_back(Complex(1.0, 0.0));
  auto observer = [&](double t, const Mat2& m) {
    path.times.push_back(t);
    path.propagators.push_back(m);
    path.sqrt_d.push_back(continue_sqrt(m(1, 1), path.sqrt_d.back()));
  };
  const auto sol = numerics::dormand_prince<Mat2>(rhs, t0, t1, Mat2::Identity(), opt, observer);
  path.stats = sol.stats;
  return path;
}

CVector apply_propagator(const Mat2& m, Complex sqrt_d, const CVector& psi) {
  return lift_apply(normal_order(m, sqrt_d), psi);
}

EvolutionResult evolve(const ModelParams& params, const CVector& psi0, double t0,
                       double t1, const FockSpace& space, const EvolveOptions& options) {
  params.validate();
  if (psi0.size() != space.cutoff()) throw DimensionMismatch("initial state length differs from the cutoff");
  if (!psi0.allFinite()) throw InvalidArgument("initial state is not finite");
  if (!(t1 > t0)) throw InvalidArgument("evolution requires t1 > t0");
  if (!(options.rel_tol > 0.0) || !(options.abs_tol > 0.0)) throw InvalidArgument("tolerances must be positive");

  EvolutionResult out;
  switch (options.method) {
    case EvolveMethod::Propagator: {
      const PropagatorPath path = evolve_propagator(params, t0, t1, options.rel_tol, options.abs_tol);
      out.times = path.times;
      out.states.reserve(path.times.size());
      out.states.push_back(psi0);
      for (std::size_t k = 1; k < path.times.size(); ++k) {
        out.states.push_back(apply_propagator(path.propagators[k], path.sqrt_d[k], psi0));
      }
      out.stats = path.stats;
      break;
    }
    case EvolveMethod::FockRungeKutta: {
      numerics::OdeOptions opt;
      opt.rel_tol = options.rel_tol;
      opt.abs_tol = options.abs_tol;
      auto rhs = [&](double t, const CVector& psi) -> CVector {
        return -kI * apply_hamiltonian(params, t, psi);
      };
      auto sol = numerics::dormand_prince<CVector>(rhs, t0, t1, psi0, opt);
      out.times = std::move(sol.times);
      out.states = std::move(sol.states);
      out.stats = sol.stats;
      break;
    }
    case EvolveMethod::ExponentialMidpoint: {
      if (options.midpoint_steps < 1) throw InvalidArgument("midpoint_steps must be positive");
      const double h = (t1 - t0) / options.midpoint_steps;
      CVector psi = psi0;
      out.times.push_back(t0);
      out.states.push_back(psi);
      for (int k = 0; k < options.midpoint_steps; ++k) {
        const double mid = t0 + (k + 0.5) * h;
        const CMatrix step = numerics::expm(-kI * h * build_hamiltonian(params, mid, space).entries());
        psi = step * psi;
        out.times.push_back(k + 1 == options.midpoint_steps ? t1 : t0 + (k + 1) * h);
        out.states.push_back(psi);
      }
      out.stats.accepted = options.midpoint_steps;
      break;
    }
  }
  for (const auto& s : out.states) {
    if (!s.allFinite()) throw StepSizeUnderflow("evolved state became non-finite");
  }
  return out;
}

double berry_phase_closed(const GaugeSolution& gauge, int n) {
  if (n < 0) throw InvalidArgument("Fock index must be non-negative");
  return kPi * (n + 0.5) * (1.0 - gauge.cos_eta);
}

Complex berry_integrand(const GaugeSolution& gauge, int n, double t, const FockSpace& space,
                        PhaseRoute route) {
  if (route == PhaseRoute::Algebraic) {
    const Mat2 r = transformation_defining(gauge, t, false);
    const Mat2 drinv = transformation_defining_dt(gauge, t, true);
    return diagonal_element(from_defining(kI * r * drinv), n);
  }
  const int cutoff = space.cutoff();
  const CVector rcol = transformation_column(gauge, t, n, cutoff, false);
  const CVector dcol = inverse_derivative_column(gauge, t, n, cutoff);
  // R is Hermitian, so row n of R is the conjugate of column n.
  return kI * rcol.dot(dcol);
}

QuadraturePhase berry_phase_quadrature(const ModelParams& params,
                                       const GaugeSolution& gauge, int n,
                                       const FockSpace& space, double abs_tol) {
  params.validate();
  if (gauge.normalizable()) require_state_range(n, space);
  QuadraturePhase out;
  out.route = gauge.normalizable() ? PhaseRoute::Fock : PhaseRoute::Algebraic;
  const auto res = numerics::gauss_kronrod(
      [&](double t) { return berry_integrand(gauge, n, t, space, out.route); }, 0.0,
      gauge.period, abs_tol);
  out.value = res.value.real();
  out.imag_residual = std::abs(res.value.imag());
  out.error_estimate = res.error_estimate;
  out.evaluations = res.evaluations;
  return out;
}

EvolutionPhase berry_phase_from_evolution(const ModelParams& params,
                                          const GaugeSolution& gauge, int n,
                                          const FockSpace& space, double tol) {
  params.validate();
  require_normalizable(gauge);
  const double period = gauge.period;
  const PropagatorPath path = evolve_propagator(params, 0.0, period, tol, tol * 1e-2);
  EvolutionPhase out;
  out.stats = path.stats;

  require_state_range(n, space);
  // <bra(0)|U(T)|ket(0)> is the (n, n) entry of the lifted R(0) U(T) R^{-1}(0).
  // Forming the product in the defining representation avoids summing the
  // exponentially growing Fock entries of U(T) against the decaying ket.
  const Mat2 r0 = transformation_defining(gauge, 0.0, false);
  const Mat2 r0inv = transformation_defining(gauge, 0.0, true);
  Complex sqrt_d(1.0, 0.0);
  Mat2 g = Mat2::Identity();
  for (const Mat2& m : path.propagators) {
    g = r0 * m * r0inv;
    sqrt_d = continue_sqrt(g(1, 1), sqrt_d);
  }
  out.total = std::arg(lift_diagonal(normal_order(g, sqrt_d), n));
  // <bra(t)|H(t)|ket(t)> = <n| R H R^{-1} |n>, again formed in the defining representation.
  auto energy = [&](double t) {
    const Mat2 h = transformation_defining(gauge, t, false) * to_defining(hamiltonian_element(params, t)) *
                   transformation_defining(gauge, t, true);
    return diagonal_element(from_defining(h), n);
  };
  const auto dyn = numerics::gauss_kronrod(
      [&](double t) { return Complex(energy(t).real(), 0.0); }, 0.0, period, 1e-11);
  out.dynamical = -dyn.value.real();
  out.wrapped = std::remainder(out.total - out.dynamical, 2.0 * kPi);
  const double closed = berry_phase_closed(gauge, n);
  out.shift = static_cast<int>(std::lround((closed - out.wrapped) / (2.0 * kPi)));
  out.value = out.wrapped + 2.0 * kPi * out.shift;
  return out;
}

PhaseReport berry_phase_report(const ModelParams& params, const GaugeSolution& gauge,
                               int n, const FockSpace& space, double quad_tol,
                               double ode_tol) {
  PhaseReport r;
  r.n = n;
  r.branch = gauge.branch;
  r.gamma_closed = berry_phase_closed(gauge, n);
  r.quadrature = berry_phase_quadrature(params, gauge, n, space, quad_tol);
  try {
    r.evolution = berry_phase_from_evolution(params, gauge, n, space, ode_tol);
  } catch (const CutoffNotConverged& e) {
    r.evolution_diagnostic = e.what();
  }
  return r;
}

Mat2 monodromy(const ModelParams& params, double tol) {
  params.validate();
  return evolve_propagator(params, 0.0, 2.0 * kPi / params.drive, tol, tol * 1e-2)
      .propagators.back();
}

namespace {

// Normalised Hermite functions phi_0..phi_{count-1} at one point.
void hermite_functions(double gamma, double x, int count, double* out) {
  const double xi = std::sqrt(gamma) * x;
  double prev = 0.0;
  double cur = std::pow(gamma / kPi, 0.25) * std::exp(-0.5 * xi * xi);
  for (int k = 0; k < count; ++k) {
    out[k] = cur;
    const double next = std::sqrt(2.0 / (k + 1)) * xi * cur - std::sqrt(double(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
  }
}

void require_positive_gamma(double gamma) {
  if (!(gamma > 0.0)) {
    throw NonNormalizable("kernel eigenfunctions need Gamma > 0, got " + std::to_string(gamma));
  }
}

}  // namespace

CVector kernel_wavefunction(int n, double gamma, const std::vector<double>& grid) {
  require_positive_gamma(gamma);
  if (n < 0) throw InvalidArgument("Fock index must be non-negative");
  std::vector<double> buf(n + 1);
  CVector out(static_cast<Eigen::Index>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) throw InvalidArgument("grid contains a non-finite point");
    hermite_functions(gamma, grid[i], n + 1, buf.data());
    out(static_cast<Eigen::Index>(i)) = buf[n];
  }
  return out;
}

CVector original_gauge_wavefunction(const ModelParams& params, const GaugeSolution& gauge,
                                    int n, double t, const std::vector<double>& grid,
                                    const FockSpace& space, StateKind kind) {
  require_positive_gamma(gauge.gamma);
  const BiorthogonalState s = gauge_solution_state(params, gauge, n, t, space);
  const CVector& c = kind == StateKind::Ket ? s.ket : s.bra;
  const int cutoff = space.cutoff();
  std::vector<double> buf(cutoff);
  CVector out(static_cast<Eigen::Index>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) throw InvalidArgument("grid contains a non-finite point");
    hermite_functions(gauge.gamma, grid[i], cutoff, buf.data());
    Complex v(0.0);
    for (int m = 0; m < cutoff; ++m) v += c(m) * buf[m];
    out(static_cast<Eigen::Index>(i)) = v;
  }
  return out;
}

}  // namespace ptgauge
