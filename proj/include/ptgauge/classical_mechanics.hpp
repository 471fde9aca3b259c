#pragma once

// Classical counterpart: the complex Hamiltonian H(x, p, t), the
// time-dependent canonical map to (X, P) with its generating function, the
// static kernel H' = Gamma/2 (X^2 + P^2), action-angle variables and the
// Hannay angle.
//
// The classical map uses the angle eta_cl = -eta of the quantum gauge, which
// reproduces the same Gamma; see GaugeSolution::eta_classical().

#include <cstdint>
#include <utility>
#include <vector>

#include "ptgauge/gauge_engine.hpp"
#include "ptgauge/numerics/ode.hpp"

namespace ptgauge {

struct ComplexPhasePoint {
  Complex x{0.0};
  Complex p{0.0};
  double t = 0.0;
};

struct ActionAngle {
  double action = 0.0;  // I >= 0
  double angle = 0.0;   // Theta in [0, 2 pi)
};

/// [Omega/4 + i(G/2) sin phi] x^2 + [Omega/4 - i(G/2) sin phi] p^2 - i G cos phi x p.
Complex classical_hamiltonian(const ComplexPhasePoint& z, const ModelParams& params);

/// (dH/dp, -dH/dx): Hamilton's equations.
std::pair<Complex, Complex> hamilton_rhs(const ComplexPhasePoint& z, const ModelParams& params);

/// Coefficients of (x, p) = M(t) (X, P).
struct CanonicalMatrix {
  Complex xx, xp, px, pp;
  Complex determinant() const { return xx * pp - xp * px; }
};

CanonicalMatrix canonical_matrix(double t, const GaugeSolution& gauge);
/// d/dt of canonical_matrix at fixed (X, P).
CanonicalMatrix canonical_matrix_dt(double t, const GaugeSolution& gauge);

/// (x, p) from (X, P) at time t.
std::pair<Complex, Complex> canonical_map(Complex X, Complex P, double t,
                                          const GaugeSolution& gauge);
/// (X, P) from (x, p) at time t (the map has unit determinant).
std::pair<Complex, Complex> inverse_canonical_map(Complex x, Complex p, double t,
                                                  const GaugeSolution& gauge);

Complex generating_function(Complex X, Complex P, double t, const GaugeSolution& gauge);

struct GeneratingGradient {
  Complex dX, dP, dt;
};
GeneratingGradient generating_gradient(Complex X, Complex P, double t,
                                       const GaugeSolution& gauge);

/// max over random (X, P, t) of |P Xdot - H' - (p xdot - H) - dF/dt| with
/// H' = Gamma/2 (X^2 + P^2) and (Xdot, Pdot) from Hamilton's equations of H'.
double verify_gauge_equivalence(const ModelParams& params, const GaugeSolution& gauge,
                                int samples, std::uint64_t seed);

/// Quadratic form a X^2 + b P^2 + c X P.
struct QuadraticForm {
  Complex xx, pp, xp;
};

/// H(x(X,P,t), p(X,P,t), t) - p dx/dt|_{X,P} - dF/dt|_{X,P} as a quadratic form.
QuadraticForm transformed_form(const ModelParams& params, const GaugeSolution& gauge, double t);

struct TransformedHamiltonian {
  std::vector<double> times;
  std::vector<QuadraticForm> forms;
  double gamma = 0.0;  // coefficient of (X^2 + P^2) / 2 at the first time
  double max_deviation = 0.0;  // from (Gamma/2, Gamma/2, 0), over all times
};

/// Extracts the transformed form at each time and checks it against
/// (Gamma/2, Gamma/2, 0). Throws CoefficientMismatch naming the offending
/// coefficient when the deviation exceeds tol * max(1, |Gamma|).
TransformedHamiltonian transformed_hamiltonian(const ModelParams& params,
                                               const GaugeSolution& gauge,
                                               std::vector<double> times = {},
                                               double tol = 1e-12);

/// X = sqrt(2I) sin Theta, P = sqrt(2I) cos Theta.
std::pair<double, double> action_angle_map(const ActionAngle& aa);

/// (1/2pi) int dTheta int_0^{2pi} p dx/dphi dphi at action I.
Complex hannay_bracket(const GaugeSolution& gauge, double action, double tol = 1e-10,
                       int* panels = nullptr);

struct HannayQuadrature {
  double dtheta = 0.0;
  double imag_residual = 0.0;
  /// |bracket(2) - 2 bracket(1)| and |bracket(3) - 3 bracket(1)|.
  double linearity_residual = 0.0;
  Complex bracket1, bracket2, bracket3;
  int panels = 0;
};

/// -d/dI of the bracket from the exact slope between I = 1 and I = 2.
HannayQuadrature hannay_angle_quadrature(const ModelParams& params, const GaugeSolution& gauge,
                                         double tol = 1e-10);

/// pi (cos eta - 1).
double hannay_angle_closed(const GaugeSolution& gauge);

struct HannayResult {
  int n = 0;
  Branch branch = Branch::Plus;
  double gamma_n = 0.0;  // quantum quadrature route
  double dtheta_closed = 0.0;
  double dtheta_quadrature = 0.0;
  /// gamma_n + (n + 1/2) dtheta_quadrature.
  double correspondence_residual = 0.0;
  /// ||gamma_n| - (n + 1/2)|dtheta_quadrature||.
  double magnitude_residual = 0.0;
  /// gamma_n / ((n + 1/2) dtheta): -1, +1, or 0 when both vanish.
  int realized_sign = 0;
  int cutoff = 0;  // Fock cutoff of the quantum side (0: algebraic route)
};

HannayResult correspondence_check(const ModelParams& params, int n,
                                  const CutoffPolicy& policy = {});

struct Trajectory {
  std::vector<ComplexPhasePoint> points;
  numerics::StepStats stats;
  ComplexPhasePoint analytic_endpoint;
  double endpoint_error = 0.0;
  /// max |X^2 + P^2 - (X0^2 + P0^2)| along the trajectory in transformed variables.
  double invariant_drift = 0.0;
};

/// Integrates Hamilton's equations of H(x, p, t) over complex phase space and
/// compares the endpoint with transform, rotate at Gamma, transform back.
Trajectory integrate_trajectory(const ModelParams& params, const GaugeSolution& gauge,
                                const ComplexPhasePoint& z0, double t1, double tol = 1e-12);

}  // namespace ptgauge
