#include "ptgauge/gauge_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "ptgauge/errors.hpp"

namespace ptgauge {

namespace {

constexpr Complex kI{0.0, 1.0};

Complex unit(double phi) { return std::polar(1.0, phi); }

void require_normalizable(const GaugeSolution& gauge, const char* what) {
  if (!gauge.normalizable()) {
    throw CutoffNotConverged(std::string(what) +
                             ": R^{-1}|n> is not normalizable on this branch (cos eta = " +
                             std::to_string(gauge.cos_eta) + ")");
  }
}

// S+ v with the truncated realisation: (S+ v)_m = sqrt(m (m-1)) / 2 v_{m-2}.
CVector apply_splus(const CVector& v) {
  CVector out = CVector::Zero(v.size());
  for (Eigen::Index m = 2; m < v.size(); ++m) {
    out(m) = 0.5 * std::sqrt(double(m) * double(m - 1)) * v(m - 2);
  }
  return out;
}

// Entrywise |E| / (|A||B| + |C||D|) for E = AB - CD, restricted to a block.
double relative_residual(const CMatrix& a, const CMatrix& b, const CMatrix& c,
                         const CMatrix& d, int block) {
  const CMatrix e = (a * b - c * d).topLeftCorner(block, block);
  const Eigen::MatrixXd scale =
      (a.cwiseAbs() * b.cwiseAbs() + c.cwiseAbs() * d.cwiseAbs()).topLeftCorner(block, block);
  double worst = 0.0;
  for (int j = 0; j < block; ++j) {
    for (int i = 0; i < block; ++i) {
      const double num = std::abs(e(i, j));
      const double den = scale(i, j);
      worst = std::max(worst, den > 0.0 ? num / den : num);
    }
  }
  return worst;
}

}  // namespace

void ModelParams::validate() const {
  if (!std::isfinite(omega_cap) || !std::isfinite(coupling) || !std::isfinite(drive)) {
    throw InvalidArgument("model parameters must be finite");
  }
  if (!(drive > 0.0)) {
    throw InvalidArgument("driving frequency must be positive, got " + std::to_string(drive));
  }
}

GaugeSolution solve_auxiliary(const ModelParams& params) {
  params.validate();
  const double s = params.drive + params.omega_cap;
  const double g = params.coupling;
  const double delta = std::hypot(s, 2.0 * g);
  if (!(delta > 0.0)) {
    throw DegenerateParameters("Delta = 0 (omega + Omega = 0 and G = 0): eta is undefined");
  }
  const double b = sign(params.branch);
  GaugeSolution sol;
  sol.delta = delta;
  sol.sin_eta = b * 2.0 * g / delta;
  sol.cos_eta = -b * s / delta;
  sol.eta = std::atan2(sol.sin_eta, sol.cos_eta);
  sol.gamma = -b * delta / 2.0 - params.drive / 2.0;
  sol.drive = params.drive;
  sol.period = 2.0 * std::numbers::pi / params.drive;
  sol.branch = params.branch;
  return sol;
}

double auxiliary_residual(const ModelParams& params, const GaugeSolution& gauge) {
  return std::abs(params.coupling * std::cos(gauge.eta) +
                  0.5 * (params.drive + params.omega_cap) * std::sin(gauge.eta));
}

std::optional<Branch> normalizable_branch(const ModelParams& params) {
  const double s = params.drive + params.omega_cap;
  if (s > 0.0) return Branch::Minus;
  if (s < 0.0) return Branch::Plus;
  return std::nullopt;
}

AlgebraElement hamiltonian_element(const ModelParams& params, double t) {
  const double phi = params.drive * t;
  return {params.omega_cap, params.coupling * unit(phi), -params.coupling * unit(-phi)};
}

OperatorMatrix build_hamiltonian(const ModelParams& params, double t,
                                 const FockSpace& space) {
  return to_fock(hamiltonian_element(params, t), space);
}

Mat2 transformation_defining(const GaugeSolution& gauge, double t, bool inverse) {
  const double c = inverse ? 0.5 * gauge.eta : -0.5 * gauge.eta;
  return hyperbolic_exp(c, gauge.phase(t));
}

Mat2 transformation_defining_dt(const GaugeSolution& gauge, double t, bool inverse) {
  const double c = inverse ? 0.5 * gauge.eta : -0.5 * gauge.eta;
  return gauge.drive * hyperbolic_exp_dphi(c, gauge.phase(t));
}

NormalOrdered transformation_factors(const GaugeSolution& gauge, double t, bool inverse) {
  const double c = inverse ? 0.5 * gauge.eta : -0.5 * gauge.eta;
  return hyperbolic_normal_order(c, gauge.phase(t));
}

TransformationPair build_R(const ModelParams& params, const GaugeSolution& gauge,
                           double t, const FockSpace& space) {
  params.validate();
  const int n = space.cutoff();
  return {OperatorMatrix(space, lift(transformation_factors(gauge, t, false), n)),
          OperatorMatrix(space, lift(transformation_factors(gauge, t, true), n))};
}

CVector transformation_column(const GaugeSolution& gauge, double t, int n, int cutoff,
                              bool inverse) {
  if (n < 0 || n >= cutoff) throw InvalidArgument("Fock index outside the cutoff");
  return lift_column(transformation_factors(gauge, t, inverse), n, cutoff);
}

CVector inverse_derivative_column(const GaugeSolution& gauge, double t, int n,
                                  int cutoff) {
  const NormalOrdered f = transformation_factors(gauge, t, true);
  // d/dt [exp(A S+) D exp(C S-)] = A' S+ R^{-1} + C' R^{-1} S-, A' = i w A, C' = -i w C.
  CVector out = (kI * gauge.drive * f.raise) * apply_splus(lift_column(f, n, cutoff));
  if (n >= 2) {
    out += (-kI * gauge.drive * f.lower * 0.5 * std::sqrt(double(n) * double(n - 1))) *
           lift_column(f, n - 2, cutoff);
  }
  return out;
}

CMatrix inverse_derivative(const GaugeSolution& gauge, double t, int cutoff) {
  CMatrix out(cutoff, cutoff);
  for (int n = 0; n < cutoff; ++n) out.col(n) = inverse_derivative_column(gauge, t, n, cutoff);
  return out;
}

AlgebraElement similarity_closed_form(const GaugeSolution& gauge, double t, Generator x) {
  const double phi = gauge.phase(t);
  const double s = gauge.sin_eta;
  const double c = gauge.cos_eta;
  const double sin2 = 0.5 * (1.0 - c);  // sin^2(eta/2)
  const double cos2 = 0.5 * (1.0 + c);  // cos^2(eta/2)
  switch (x) {
    case Generator::SPlus:
      return {-unit(-phi) * s, cos2, unit(-2.0 * phi) * sin2};
    case Generator::SMinus:
      return {unit(phi) * s, unit(2.0 * phi) * sin2, cos2};
    case Generator::Sz:
      return {c, 0.5 * s * unit(phi), -0.5 * s * unit(-phi)};
  }
  throw InvalidArgument("unknown generator");
}

AlgebraElement connection_closed_form(const GaugeSolution& gauge, double t,
                                      bool inject_fault) {
  const double phi = gauge.phase(t);
  const double w = gauge.drive;
  const double sign_pm = inject_fault ? -1.0 : 1.0;
  return {w * (1.0 - gauge.cos_eta),
          sign_pm * -0.5 * w * gauge.sin_eta * unit(phi),
          sign_pm * 0.5 * w * gauge.sin_eta * unit(-phi)};
}

AlgebraElement gauge_transform_element(const ModelParams& params,
                                       const GaugeSolution& gauge, double t) {
  const Mat2 r = transformation_defining(gauge, t, false);
  const Mat2 rinv = transformation_defining(gauge, t, true);
  const Mat2 drinv = transformation_defining_dt(gauge, t, true);
  const Mat2 h = to_defining(hamiltonian_element(params, t));
  return from_defining(r * h * rinv - kI * r * drinv);
}

OperatorMatrix gauge_transform(const ModelParams& params, const GaugeSolution& gauge,
                               double t, const FockSpace& space,
                               const GaugeTransformOptions& options) {
  if (options.route == GaugeRoute::Algebraic) {
    return to_fock(gauge_transform_element(params, gauge, t), space);
  }
  require_normalizable(gauge, "similarity gauge transform");
  const int n = space.cutoff();
  const auto [r, rinv] = build_R(params, gauge, t, space);
  const OperatorMatrix h = build_hamiltonian(params, t, space);
  CMatrix out = r.entries() * (h.entries() * rinv.entries());
  switch (options.connection) {
    case ConnectionTerm::ClosedForm:
      out -= to_fock(connection_closed_form(gauge, t), space).entries();
      break;
    case ConnectionTerm::Analytic:
      out -= kI * (r.entries() * inverse_derivative(gauge, t, n));
      break;
    case ConnectionTerm::FiniteDifference: {
      const double h0 = gauge.period * 1e-5;
      auto central = [&](double step) {
        const CMatrix plus = lift(transformation_factors(gauge, t + step, true), n);
        const CMatrix minus = lift(transformation_factors(gauge, t - step, true), n);
        return CMatrix((plus - minus) / (2.0 * step));
      };
      const CMatrix d = (4.0 * central(0.5 * h0) - central(h0)) / 3.0;
      out -= kI * (r.entries() * d);
      break;
    }
  }
  return {space, std::move(out)};
}

double BchResidual::max() const noexcept {
  return std::max({splus, sminus, sz, connection});
}

BchResidual verify_bch(const ModelParams& params, const GaugeSolution& gauge, double t,
                       const FockSpace& space, const BchOptions& options) {
  params.validate();
  const int n = space.cutoff();
  const auto gens = build_su11(space);
  const auto [r, rinv] = build_R(params, gauge, t, space);
  const CMatrix drinv = inverse_derivative(gauge, t, n);
  auto rhs = [&](Generator g) { return to_fock(similarity_closed_form(gauge, t, g), space).entries(); };
  const CMatrix rhs4 =
      to_fock(connection_closed_form(gauge, t, options.inject_fault), space).entries();

  BchResidual out;
  if (options.form == BchForm::Intertwined) {
    const int block = std::min(space.interior(), n - 2);
    const CMatrix& R = r.entries();
    out.splus = relative_residual(R, gens.splus.entries(), rhs(Generator::SPlus), R, block);
    out.sminus = relative_residual(R, gens.sminus.entries(), rhs(Generator::SMinus), R, block);
    out.sz = relative_residual(R, gens.sz.entries(), rhs(Generator::Sz), R, block);
    const CMatrix idr = kI * drinv;
    out.connection = relative_residual(idr, CMatrix::Identity(n, n), rinv.entries(), rhs4, block);
    return out;
  }

  const int block = options.block > 0 ? std::min(options.block, n) : space.interior();
  auto similarity = [&](const OperatorMatrix& x, const CMatrix& expected) {
    const CMatrix m = r.entries() * x.entries() * rinv.entries() - expected;
    return max_abs(m.topLeftCorner(block, block));
  };
  out.splus = similarity(gens.splus, rhs(Generator::SPlus));
  out.sminus = similarity(gens.sminus, rhs(Generator::SMinus));
  out.sz = similarity(gens.sz, rhs(Generator::Sz));
  const CMatrix conn = kI * (r.entries() * drinv) - rhs4;
  out.connection = max_abs(conn.topLeftCorner(block, block));
  return out;
}

double pt_residual(const OperatorMatrix& at_minus_t, const OperatorMatrix& at_t) {
  const OperatorMatrix pi = parity_operator(at_t.space());
  const CMatrix reflected = pi.entries() * at_minus_t.entries().conjugate() * pi.entries();
  return max_abs(reflected - at_t.entries());
}

double pt_check(const ModelParams& params, double t, const FockSpace& space) {
  return pt_residual(build_hamiltonian(params, -t, space), build_hamiltonian(params, t, space));
}

std::vector<double> spectrum(const GaugeSolution& gauge, int n_max) {
  if (n_max < 1) throw InvalidArgument("n_max must be at least 1");
  std::vector<double> e(n_max);
  for (int n = 0; n < n_max; ++n) e[n] = (n + 0.5) * gauge.gamma;
  return e;
}

std::vector<Complex> dense_spectrum(const ModelParams& params, double t,
                                    const FockSpace& space) {
  const OperatorMatrix h = build_hamiltonian(params, t, space);
  Eigen::ComplexEigenSolver<CMatrix> solver(h.entries(), false);
  if (solver.info() != Eigen::Success) {
    throw ExponentialDidNotConverge("dense eigensolver did not converge");
  }
  std::vector<Complex> ev(solver.eigenvalues().begin(), solver.eigenvalues().end());
  std::sort(ev.begin(), ev.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return ev;
}

CutoffCertificate assess_cutoff(const GaugeSolution& gauge, int n_max,
                                const CutoffPolicy& policy) {
  if (n_max < 1) throw InvalidArgument("n_max must be at least 1");
  if (policy.initial < 4 || policy.max_cutoff < policy.initial || policy.margin_divisor < 3 ||
      !(policy.tail_tol > 0.0) || !(policy.assertion_tol > 0.0)) {
    throw InvalidArgument("invalid cutoff policy");
  }
  CutoffCertificate cert;
  if (!gauge.normalizable()) {
    cert.diagnostic = "R^{-1}|n> is not normalizable on this branch (cos eta = " +
                      std::to_string(gauge.cos_eta) + ")";
    return cert;
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int cutoff = policy.initial; cutoff <= policy.max_cutoff; cutoff *= 2) {
    const int margin = std::max(2, cutoff / policy.margin_divisor);
    cert.cutoff = cutoff;
    cert.margin = margin;
    if (n_max > cutoff - 2 * margin) {
      cert.diagnostic = "requested states do not fit below the boundary margin";
      continue;
    }
    try {
      double tail = 0.0, cond = 0.0;
      for (int n = 0; n < n_max; ++n) {
        const CVector ket = transformation_column(gauge, 0.0, n, cutoff, true);
        const CVector bra = transformation_column(gauge, 0.0, n, cutoff, false);
        tail = std::max(tail, ket.tail(2 * margin).norm());
        cond = std::max(cond, ket.norm() * bra.norm());
      }
      cert.tail = tail;
      cert.conditioning = cond;
    } catch (const ExponentialDidNotConverge& e) {
      cert.diagnostic = e.what();
      break;
    }
    if (cert.tail < policy.tail_tol) {
      if (16.0 * eps * cert.conditioning < policy.assertion_tol) {
        cert.certified = true;
        cert.diagnostic.clear();
      } else {
        cert.diagnostic = "tail converged but conditioning " + std::to_string(cert.conditioning) +
                          " limits accuracy to " + std::to_string(16.0 * eps * cert.conditioning);
      }
      return cert;
    }
    cert.diagnostic = "tail " + std::to_string(cert.tail) + " above tolerance at the hard maximum cutoff";
  }
  return cert;
}

FockSpace certify_cutoff(const GaugeSolution& gauge, int n_max, const CutoffPolicy& policy) {
  const CutoffCertificate cert = assess_cutoff(gauge, n_max, policy);
  if (!cert.certified) throw CutoffNotConverged("cutoff not certified: " + cert.diagnostic);
  return cert.space();
}

}  // namespace ptgauge
