#pragma once

// Biorthogonal gauge-solution states, the metric operator, time evolution
// under the non-Hermitian H(t), the non-adiabatic Berry phase by three
// independent routes, and position-space wavefunctions.

#include <optional>
#include <string>
#include <vector>

#include "ptgauge/gauge_engine.hpp"
#include "ptgauge/numerics/ode.hpp"

namespace ptgauge {

struct BiorthogonalState {
  CVector ket;
  CVector bra;
  int label = 0;
  double time = 0.0;
};

/// e_n. Throws InvalidArgument when n is outside the interior of the space.
CVector kernel_eigenstate(int n, const FockSpace& space);

/// ket = e^{-i E_n t} R^{-1}(t) e_n, bra = e^{-i E_n t} R(t) e_n. Throws
/// CutoffNotConverged when the gauge is not normalizable or n lies in the
/// boundary margin.
BiorthogonalState gauge_solution_state(const ModelParams& params,
                                       const GaugeSolution& gauge, int n, double t,
                                       const FockSpace& space);

/// conj(bra)^T ket.
Complex biorthogonal_product(const CVector& bra, const CVector& ket);

/// G_nm = <bra_n|ket_m>.
CMatrix gram_matrix(const std::vector<BiorthogonalState>& states);

/// chi = R(t)^2 = exp(-eta K(t)), lifted exactly. Requires cos eta > 0.
OperatorMatrix metric_operator(const ModelParams& params, const GaugeSolution& gauge,
                               double t, const FockSpace& space);

/// R(t) (R(t) v), each factor applied through its normal-ordered form.
CVector apply_metric(const GaugeSolution& gauge, double t, const CVector& v);

enum class EvolveMethod {
  /// Integrate the 2x2 propagator and lift it onto the Fock state.
  Propagator,
  /// Dormand-Prince directly on the truncated Fock vector. The truncated H(t)
  /// has spurious boundary modes that grow like exp(0.4 G N t), so this is
  /// only reliable over short horizons.
  FockRungeKutta,
  /// Fixed-step exponential midpoint rule with a dense matrix exponential.
  ExponentialMidpoint,
};

struct EvolveOptions {
  EvolveMethod method = EvolveMethod::Propagator;
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int midpoint_steps = 200;
};

struct EvolutionResult {
  std::vector<double> times;
  std::vector<CVector> states;
  numerics::StepStats stats;
};

/// Solves i dpsi/dt = H(t) psi from t0 to t1 without renormalisation. Throws
/// StepSizeUnderflow if the controller stalls.
EvolutionResult evolve(const ModelParams& params, const CVector& psi0, double t0,
                       double t1, const FockSpace& space, const EvolveOptions& options = {});

/// H(t) psi applied through the banded structure.
CVector apply_hamiltonian(const ModelParams& params, double t, const CVector& psi);

struct PropagatorPath {
  std::vector<double> times;
  std::vector<Mat2> propagators;
  /// Square root of the (1,1) entry, continued from 1 at t0.
  std::vector<Complex> sqrt_d;
  numerics::StepStats stats;
};

/// i dM/dt = h(t) M, M(t0) = 1, in the defining representation.
PropagatorPath evolve_propagator(const ModelParams& params, double t0, double t1,
                                 double rel_tol = 1e-12, double abs_tol = 1e-14);

/// Lift of a propagator onto a Fock state (entries exact for finitely
/// supported psi).
CVector apply_propagator(const Mat2& m, Complex sqrt_d, const CVector& psi);

double berry_phase_closed(const GaugeSolution& gauge, int n);

enum class PhaseRoute { Fock, Algebraic };

struct QuadraturePhase {
  double value = 0.0;
  double imag_residual = 0.0;
  double error_estimate = 0.0;
  PhaseRoute route = PhaseRoute::Fock;
  int evaluations = 0;
};

/// gamma_n = i int_0^T <n| R dR^{-1}/dt |n> dt by adaptive Gauss-Kronrod. The
/// matrix element is summed over the Fock basis of `space` when the gauge is
/// normalizable and evaluated in the defining representation otherwise.
QuadraturePhase berry_phase_quadrature(const ModelParams& params,
                                       const GaugeSolution& gauge, int n,
                                       const FockSpace& space, double abs_tol = 1e-10);

/// The integrand of berry_phase_quadrature at time t.
Complex berry_integrand(const GaugeSolution& gauge, int n, double t, const FockSpace& space,
                        PhaseRoute route);

struct EvolutionPhase {
  double value = 0.0;  // shifted to the representative nearest gamma_closed
  double wrapped = 0.0;  // total - dynamical before the shift, in (-pi, pi]
  int shift = 0;  // value = wrapped + 2 pi shift
  double total = 0.0;
  double dynamical = 0.0;
  numerics::StepStats stats;
};

/// Total phase arg <bra(0)|ket(T)> from the integrated propagator, dynamical
/// phase -int_0^T Re <bra(t)|H(t)|ket(t)> dt along the analytic pair. Needs
/// Hilbert-space kets, so throws CutoffNotConverged on a non-normalizable branch.
EvolutionPhase berry_phase_from_evolution(const ModelParams& params,
                                          const GaugeSolution& gauge, int n,
                                          const FockSpace& space, double tol = 1e-12);

struct PhaseReport {
  int n = 0;
  Branch branch = Branch::Plus;
  double gamma_closed = 0.0;
  QuadraturePhase quadrature;
  /// Empty on a non-normalizable branch; evolution_diagnostic says why.
  std::optional<EvolutionPhase> evolution;
  std::string evolution_diagnostic;
};

PhaseReport berry_phase_report(const ModelParams& params, const GaugeSolution& gauge,
                               int n, const FockSpace& space, double quad_tol = 1e-10,
                               double ode_tol = 1e-12);

/// Monodromy matrix M(T) of the defining-representation propagator.
Mat2 monodromy(const ModelParams& params, double tol = 1e-12);

/// Normalised Hermite functions (Gamma^{1/2} / (2^n sqrt(pi) n!))^{1/2}
/// e^{-Gamma X^2 / 2} H_n(Gamma^{1/2} X). Throws NonNormalizable for Gamma <= 0.
CVector kernel_wavefunction(int n, double gamma, const std::vector<double>& grid);

enum class StateKind { Ket, Bra };

/// sum_m c_m phi_m(X) e^{-i E_n t} with c = R^{-1}(t) e_n (ket) or R(t) e_n (bra).
CVector original_gauge_wavefunction(const ModelParams& params, const GaugeSolution& gauge,
                                    int n, double t, const std::vector<double>& grid,
                                    const FockSpace& space, StateKind kind = StateKind::Ket);

}  // namespace ptgauge
