#pragma once

// The driven su(1,1) Hamiltonian
//   H(t) = Omega Sz + G (S+ e^{i w t} - S- e^{-i w t}),
// the transformation operator R(t) = exp(-(eta/2)(S+ e^{i w t} + S- e^{-i w t}))
// and the gauge transformation H' = R H R^{-1} - i R dR^{-1}/dt that reduces
// H(t) to the static kernel 2 Gamma Sz.
//
// R is never exponentiated numerically in the Fock basis: the truncated
// exponent has eigenvalues of order N, and exp of it is hopelessly
// ill-conditioned. Matrix elements of R come from its exact normal-ordered
// factorisation instead (see su11.hpp), and algebra-level quantities are
// computed in the 2x2 defining representation.

#include <optional>
#include <string>
#include <vector>

#include "ptgauge/fock_algebra.hpp"
#include "ptgauge/su11.hpp"

namespace ptgauge {

enum class Branch : int { Plus = 1, Minus = -1 };

inline int sign(Branch b) noexcept { return static_cast<int>(b); }
inline Branch flip(Branch b) noexcept {
  return b == Branch::Plus ? Branch::Minus : Branch::Plus;
}

struct ModelParams {
  double omega_cap = 0.0;  // Omega
  double coupling = 0.0;   // G
  double drive = 1.0;      // omega, the driving frequency
  Branch branch = Branch::Plus;

  /// Throws InvalidArgument unless all values are finite and drive > 0.
  void validate() const;
};

struct GaugeSolution {
  double delta = 0.0;
  double eta = 0.0;
  double sin_eta = 0.0;
  double cos_eta = 1.0;
  double gamma = 0.0;
  double period = 0.0;
  double drive = 0.0;
  Branch branch = Branch::Plus;

  /// Angle of the classical canonical map that reproduces the same Gamma.
  double eta_classical() const noexcept { return -eta; }
  /// Whether R^{-1}|n> has finite norm (|tan(eta/2)| < 1).
  bool normalizable() const noexcept { return cos_eta > 0.0; }
  double phase(double t) const noexcept { return drive * t; }
};

/// eta = atan2(b 2G / Delta, -b (w + Omega) / Delta), Gamma = -b Delta / 2 - w / 2.
/// Throws DegenerateParameters when Delta = 0.
GaugeSolution solve_auxiliary(const ModelParams& params);

/// |G cos eta + ((w + Omega) / 2) sin eta|.
double auxiliary_residual(const ModelParams& params, const GaugeSolution& gauge);

/// The branch whose transformation is normalizable, if any (w + Omega != 0).
std::optional<Branch> normalizable_branch(const ModelParams& params);

AlgebraElement hamiltonian_element(const ModelParams& params, double t);
OperatorMatrix build_hamiltonian(const ModelParams& params, double t,
                                 const FockSpace& space);

/// R(t) (inverse = false) or R^{-1}(t) in the defining representation.
Mat2 transformation_defining(const GaugeSolution& gauge, double t, bool inverse);
/// d/dt of transformation_defining.
Mat2 transformation_defining_dt(const GaugeSolution& gauge, double t, bool inverse);
/// Normal-ordered factors of R(t) or R^{-1}(t). Throws
/// ExponentialDidNotConverge when cos(eta/2) = 0.
NormalOrdered transformation_factors(const GaugeSolution& gauge, double t, bool inverse);

struct TransformationPair {
  OperatorMatrix r;
  OperatorMatrix rinv;
};

/// Truncated Fock matrices of R(t) and R^{-1}(t); every retained entry is
/// exact. R * Rinv approaches the identity on the interior block only when the
/// gauge is normalizable.
TransformationPair build_R(const ModelParams& params, const GaugeSolution& gauge,
                           double t, const FockSpace& space);

/// R(t) e_n or R^{-1}(t) e_n truncated to `cutoff` entries (exact entries).
CVector transformation_column(const GaugeSolution& gauge, double t, int n, int cutoff,
                              bool inverse);
/// d/dt R^{-1}(t) e_n, exact entries.
CVector inverse_derivative_column(const GaugeSolution& gauge, double t, int n, int cutoff);
CMatrix inverse_derivative(const GaugeSolution& gauge, double t, int cutoff);

enum class Generator { SPlus, SMinus, Sz };

/// Closed form of R X R^{-1} for X in {S+, S-, Sz}.
AlgebraElement similarity_closed_form(const GaugeSolution& gauge, double t, Generator x);
/// Closed form of i R dR^{-1}/dt. `inject_fault` flips the sign of its S+-
/// part; it exists only as a negative control for the verification suite.
AlgebraElement connection_closed_form(const GaugeSolution& gauge, double t,
                                      bool inject_fault = false);

enum class GaugeRoute { Algebraic, Similarity };
enum class ConnectionTerm { ClosedForm, Analytic, FiniteDifference };

struct GaugeTransformOptions {
  GaugeRoute route = GaugeRoute::Algebraic;
  ConnectionTerm connection = ConnectionTerm::ClosedForm;
};

/// H' as an algebra element, computed in the defining representation.
AlgebraElement gauge_transform_element(const ModelParams& params,
                                       const GaugeSolution& gauge, double t);

/// H' = R H R^{-1} - i R dR^{-1}/dt in the Fock basis. The algebraic route is
/// exact for both branches. The similarity route multiplies truncated
/// matrices; its interior block converges with the cutoff for normalizable
/// gauges only and is rejected with CutoffNotConverged otherwise.
OperatorMatrix gauge_transform(const ModelParams& params, const GaugeSolution& gauge,
                               double t, const FockSpace& space,
                               const GaugeTransformOptions& options = {});

enum class BchForm { Intertwined, Similarity };

struct BchOptions {
  BchForm form = BchForm::Intertwined;
  bool inject_fault = false;
  /// Leading block size checked by the similarity form (0: the interior).
  int block = 0;
};

struct BchResidual {
  double splus = 0.0;
  double sminus = 0.0;
  double sz = 0.0;
  double connection = 0.0;
  double max() const noexcept;
};

/// Residuals of the three similarity relations and of the connection term.
///
/// The intertwined form checks R X - RHS(X) R and i dR^{-1}/dt - R^{-1} RHS,
/// which only involve exact matrix entries on rows and columns below N - 2,
/// and normalises each entry by the sum of the moduli of its terms. The
/// similarity form checks R X R^{-1} - RHS directly on a leading block; it
/// carries truncation error and converges with the cutoff.
BchResidual verify_bch(const ModelParams& params, const GaugeSolution& gauge, double t,
                       const FockSpace& space, const BchOptions& options = {});

/// max |Pi conj(H(-t)) Pi - H(t)|.
double pt_check(const ModelParams& params, double t, const FockSpace& space);
/// The same reflection applied to an arbitrary pair (M(-t), M(t)).
double pt_residual(const OperatorMatrix& at_minus_t, const OperatorMatrix& at_t);

/// E_n = (n + 1/2) Gamma for n = 0 .. n_max - 1.
std::vector<double> spectrum(const GaugeSolution& gauge, int n_max);

/// All eigenvalues of the truncated H(t), sorted by real part.
std::vector<Complex> dense_spectrum(const ModelParams& params, double t,
                                    const FockSpace& space);

struct CutoffPolicy {
  int initial = 32;
  int max_cutoff = 2048;
  double tail_tol = 1e-10;
  /// Tolerance the certified states will be asserted at; bounds conditioning.
  double assertion_tol = 1e-8;
  /// boundary_margin = cutoff / margin_divisor.
  int margin_divisor = 8;
};

struct CutoffCertificate {
  int cutoff = 0;
  int margin = 0;
  double tail = 0.0;
  /// max_n ||R e_n|| ||R^{-1} e_n||: rounding in biorthogonal products scales with it.
  double conditioning = 0.0;
  bool certified = false;
  std::string diagnostic;

  FockSpace space() const { return FockSpace(cutoff, margin); }
};

/// Doubles the cutoff from policy.initial until the top 2 * margin entries of
/// R^{-1} e_n (n < n_max) are below tail_tol, or max_cutoff is reached. The
/// result is certified when the tail converged and the conditioning allows
/// assertions at assertion_tol. Does not throw for non-convergence.
CutoffCertificate assess_cutoff(const GaugeSolution& gauge, int n_max,
                                const CutoffPolicy& policy = {});

/// assess_cutoff, throwing CutoffNotConverged when not certified.
FockSpace certify_cutoff(const GaugeSolution& gauge, int n_max,
                         const CutoffPolicy& policy = {});

}  // namespace ptgauge
