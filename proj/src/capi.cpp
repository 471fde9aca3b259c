#include "ptgauge/ptgauge.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <exception>
#include <string>

#include "ptgauge/classical_mechanics.hpp"
#include "ptgauge/errors.hpp"
#include "ptgauge/gauge_engine.hpp"
#include "ptgauge/quantum_dynamics.hpp"
#include "ptgauge/verification.hpp"

struct ptg_model {
  ptgauge::ModelParams params;
  ptgauge::GaugeSolution gauge;
  ptg_settings settings;
};

namespace {

using namespace ptgauge;

thread_local std::string last_error;

ptg_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return PTG_ERR_INVALID_ARGUMENT;
    case ErrorKind::DimensionMismatch: return PTG_ERR_DIMENSION_MISMATCH;
    case ErrorKind::DegenerateParameters: return PTG_ERR_DEGENERATE_PARAMETERS;
    case ErrorKind::ExponentialDidNotConverge: return PTG_ERR_EXPONENTIAL;
    case ErrorKind::CutoffNotConverged: return PTG_ERR_CUTOFF_NOT_CONVERGED;
    case ErrorKind::QuadratureNotConverged: return PTG_ERR_QUADRATURE;
    case ErrorKind::StepSizeUnderflow: return PTG_ERR_STEP_UNDERFLOW;
    case ErrorKind::NonNormalizable: return PTG_ERR_NON_NORMALIZABLE;
    case ErrorKind::CoefficientMismatch: return PTG_ERR_COEFFICIENT_MISMATCH;
  }
  return PTG_ERR_INTERNAL;
}

template <class Fn>
ptg_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return PTG_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::exception& e) {
    last_error = e.what();
    return PTG_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return PTG_ERR_INTERNAL;
  }
}

void require(bool cond, const char* what) {
  if (!cond) throw InvalidArgument(what);
}

CutoffPolicy policy_of(const ptg_settings& s) {
  CutoffPolicy p;
  p.max_cutoff = s.max_cutoff;
  p.assertion_tol = s.tol_assert;
  return p;
}

// Fock space for states n < n_max: the fixed cutoff if one was requested,
// otherwise the certified one.
FockSpace space_for(const ptg_model& m, int n_max) {
  if (m.settings.cutoff > 0) {
    const int cutoff = m.settings.cutoff;
    const FockSpace space(cutoff, std::max(2, cutoff / 8));
    if (n_max > space.interior()) {
      throw CutoffNotConverged("fixed cutoff " + std::to_string(cutoff) +
                               " leaves no room for the requested states");
    }
    return space;
  }
  return certify_cutoff(m.gauge, n_max, policy_of(m.settings));
}

void copy_text(char* dst, std::size_t cap, const std::string& src) {
  const std::size_t n = std::min(cap - 1, src.size());
  std::memcpy(dst, src.data(), n);
  dst[n] = '\0';
}

}  // namespace

extern "C" {

const char* ptg_version(void) { return "0.1.0"; }

const char* ptg_status_name(ptg_status status) {
  switch (status) {
    case PTG_OK: return "ok";
    case PTG_ERR_INVALID_ARGUMENT: return "invalid argument";
    case PTG_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
    case PTG_ERR_DEGENERATE_PARAMETERS: return "degenerate parameters";
    case PTG_ERR_EXPONENTIAL: return "exponential did not converge";
    case PTG_ERR_CUTOFF_NOT_CONVERGED: return "cutoff not converged";
    case PTG_ERR_QUADRATURE: return "quadrature not converged";
    case PTG_ERR_STEP_UNDERFLOW: return "step size underflow";
    case PTG_ERR_NON_NORMALIZABLE: return "non-normalizable";
    case PTG_ERR_COEFFICIENT_MISMATCH: return "coefficient mismatch";
    case PTG_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* ptg_last_error(void) { return last_error.c_str(); }

void ptg_settings_default(ptg_settings* settings) {
  if (!settings) return;
  settings->cutoff = 0;
  settings->max_cutoff = 2048;
  settings->tol_ode = 1e-12;
  settings->tol_quad = 1e-10;
  settings->tol_assert = 1e-8;
}

ptg_status ptg_model_create(const ptg_params* params, const ptg_settings* settings,
                            ptg_model** out) {
  return guarded([&] {
    require(params && out, "null argument");
    *out = nullptr;
    require(params->branch == 1 || params->branch == -1, "branch must be +1 or -1");
    ptg_settings s;
    ptg_settings_default(&s);
    if (settings) s = *settings;
    require(s.cutoff == 0 || s.cutoff >= 4, "cutoff must be 0 (auto) or at least 4");
    require(s.max_cutoff >= 32, "max cutoff must be at least 32");
    require(s.tol_ode > 0 && s.tol_quad > 0 && s.tol_assert > 0, "tolerances must be positive");
    ModelParams p{params->omega_cap, params->coupling, params->drive,
                  params->branch == 1 ? Branch::Plus : Branch::Minus};
    const GaugeSolution g = solve_auxiliary(p);
    *out = new ptg_model{p, g, s};
  });
}

void ptg_model_destroy(ptg_model* model) { delete model; }

ptg_status ptg_gauge_info_get(const ptg_model* model, ptg_gauge_info* out) {
  return guarded([&] {
    require(model && out, "null argument");
    const GaugeSolution& g = model->gauge;
    *out = {g.delta, g.eta, g.eta_classical(), g.gamma, g.period,
            auxiliary_residual(model->params, g), sign(g.branch), g.normalizable() ? 1 : 0};
  });
}

ptg_status ptg_spectrum(const ptg_model* model, int nmax, double* energies) {
  return guarded([&] {
    require(model && energies, "null argument");
    const auto e = spectrum(model->gauge, nmax);
    std::copy(e.begin(), e.end(), energies);
  });
}

ptg_status ptg_gauge_transform_at(const ptg_model* model, double t, int route, int block,
                                  ptg_gauge_transform* out) {
  return guarded([&] {
    require(model && out, "null argument");
    require(route == 0 || route == 1, "route must be 0 (algebraic) or 1 (similarity)");
    require(block >= 1, "block must be positive");
    require(std::isfinite(t), "time must be finite");
    const GaugeSolution& g = model->gauge;
    const AlgebraElement e = gauge_transform_element(model->params, g, t);
    GaugeTransformOptions opt;
    FockSpace space(std::max(4, block + 4), 2);
    if (route == 1) {
      opt.route = GaugeRoute::Similarity;
      space = space_for(*model, block);
    }
    const OperatorMatrix h = gauge_transform(model->params, g, t, space, opt);
    const KernelDeviation d = kernel_deviation(h, g.gamma, block);
    out->t = t;
    out->sz_re = e.sz.real();
    out->sz_im = e.sz.imag();
    out->splus_re = e.splus.real();
    out->splus_im = e.splus.imag();
    out->sminus_re = e.sminus.real();
    out->sminus_im = e.sminus.imag();
    out->diagonal_deviation = d.diagonal;
    out->off_diagonal = d.off_diagonal;
    out->block = block;
    out->cutoff = space.cutoff();
    out->tolerance_met = d.max() <= model->settings.tol_assert * std::max(1.0, std::abs(g.gamma));
  });
}

ptg_status ptg_berry_phase(const ptg_model* model, int n, ptg_berry* out) {
  return guarded([&] {
    require(model && out, "null argument");
    require(n >= 0, "n must be non-negative");
    const GaugeSolution& g = model->gauge;
    FockSpace space(4);
    int cutoff = 0;
    if (g.normalizable()) {
      space = space_for(*model, n + 1);
      cutoff = space.cutoff();
    }
    const PhaseReport r = berry_phase_report(model->params, g, n, space, model->settings.tol_quad,
                                             model->settings.tol_ode);
    *out = {};
    out->n = n;
    out->branch = sign(g.branch);
    out->cutoff = cutoff;
    out->gamma_closed = r.gamma_closed;
    out->gamma_quadrature = r.quadrature.value;
    out->quadrature_imag = r.quadrature.imag_residual;
    out->quadrature_error = r.quadrature.error_estimate;
    out->quadrature_ok = r.quadrature.imag_residual < 1e-10 &&
                         std::abs(r.quadrature.value - r.gamma_closed) < 1e-8;
    if (r.evolution) {
      out->evolution_available = 1;
      out->gamma_evolution = r.evolution->value;
      out->gamma_evolution_wrapped = r.evolution->wrapped;
      out->evolution_shift = r.evolution->shift;
      out->total_phase = r.evolution->total;
      out->dynamical_phase = r.evolution->dynamical;
      out->evolution_ok = std::abs(r.evolution->value - r.gamma_closed) < 1e-6;
    } else {
      out->gamma_evolution = std::nan("");
      out->gamma_evolution_wrapped = std::nan("");
      out->total_phase = std::nan("");
      out->dynamical_phase = std::nan("");
    }
  });
}

ptg_status ptg_hannay_angle(const ptg_model* model, ptg_hannay* out) {
  return guarded([&] {
    require(model && out, "null argument");
    const HannayQuadrature q = hannay_angle_quadrature(model->params, model->gauge);
    out->dtheta_closed = hannay_angle_closed(model->gauge);
    out->dtheta_quadrature = q.dtheta;
    out->imag_residual = q.imag_residual;
    out->linearity_residual = q.linearity_residual;
    out->ok = q.imag_residual < 1e-10 && q.linearity_residual < 1e-12 * std::max(1.0, std::abs(q.bracket3)) &&
              std::abs(q.dtheta - out->dtheta_closed) < 1e-8;
  });
}

ptg_status ptg_correspondence_check(const ptg_model* model, int n, ptg_correspondence* out) {
  return guarded([&] {
    require(model && out, "null argument");
    CutoffPolicy policy = policy_of(model->settings);
    const HannayResult r = correspondence_check(model->params, n, policy);
    out->n = r.n;
    out->branch = sign(r.branch);
    out->cutoff = r.cutoff;
    out->gamma_n = r.gamma_n;
    out->dtheta_closed = r.dtheta_closed;
    out->dtheta_quadrature = r.dtheta_quadrature;
    out->residual = r.correspondence_residual;
    out->magnitude_residual = r.magnitude_residual;
    out->realized_sign = r.realized_sign;
    out->ok = r.magnitude_residual < 1e-6;
  });
}

ptg_status ptg_verify(const ptg_model* model, int fault_injection, ptg_check* checks,
                      int capacity, int* count) {
  return guarded([&] {
    require(model && count, "null argument");
    require(capacity >= 0 && (capacity == 0 || checks), "invalid check buffer");
    VerifyOptions opt;
    opt.inject_fault = fault_injection != 0;
    opt.policy = policy_of(model->settings);
    const auto results = run_verification(model->params, opt);
    *count = static_cast<int>(results.size());
    for (int i = 0; i < std::min(capacity, *count); ++i) {
      const CheckResult& r = results[i];
      copy_text(checks[i].name, sizeof checks[i].name, r.name);
      copy_text(checks[i].note, sizeof checks[i].note, r.note);
      checks[i].residual = r.residual;
      checks[i].tolerance = r.tolerance;
      checks[i].status = r.status == CheckStatus::Passed ? 1 : r.status == CheckStatus::Failed ? 0 : 2;
    }
  });
}

ptg_status ptg_evolve(const ptg_model* model, const double* psi_re, const double* psi_im, int len,
                      double t0, double t1, int samples, double* times, double* norms,
                      double* overlap_re, double* overlap_im) {
  return guarded([&] {
    require(model && psi_re, "null argument");
    require(len >= 1, "state length must be positive");
    require(samples >= 2, "at least two samples are required");
    require(std::isfinite(t0) && std::isfinite(t1) && t1 > t0, "evolution requires t1 > t0");
    CVector psi0(len);
    for (int i = 0; i < len; ++i) psi0(i) = Complex(psi_re[i], psi_im ? psi_im[i] : 0.0);
    require(psi0.allFinite(), "initial state is not finite");
    const double tol = model->settings.tol_ode;
    for (int k = 0; k < samples; ++k) {
      const double t = t0 + (t1 - t0) * k / (samples - 1);
      CVector psi = psi0;
      if (k > 0) {
        const PropagatorPath path = evolve_propagator(model->params, t0, t, tol, tol * 1e-2);
        psi = apply_propagator(path.propagators.back(), path.sqrt_d.back(), psi0);
      }
      const Complex overlap = psi0.dot(psi);
      if (times) times[k] = t;
      if (norms) norms[k] = psi.norm();
      if (overlap_re) overlap_re[k] = overlap.real();
      if (overlap_im) overlap_im[k] = overlap.imag();
    }
  });
}

ptg_status ptg_basis_superposition(const int* indices, int count, int len, double* re,
                                   double* im) {
  return guarded([&] {
    require(indices && re && im, "null argument");
    require(count >= 1 && len >= 1, "count and len must be positive");
    CVector v = CVector::Zero(len);
    for (int i = 0; i < count; ++i) {
      require(indices[i] >= 0 && indices[i] < len, "basis index outside the state length");
      v(indices[i]) += 1.0;
    }
    v /= v.norm();
    for (int i = 0; i < len; ++i) {
      re[i] = v(i).real();
      im[i] = v(i).imag();
    }
  });
}

ptg_status ptg_linspace(double lo, double hi, int steps, double* out) {
  return guarded([&] {
    require(out, "null argument");
    require(steps >= 2, "steps must be at least 2");
    require(std::isfinite(lo) && std::isfinite(hi), "bounds must be finite");
    for (int k = 0; k < steps; ++k) {
      out[k] = k + 1 == steps ? hi : lo + (hi - lo) * k / (steps - 1);
    }
  });
}

}  // extern "C"
