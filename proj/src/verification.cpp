#include "ptgauge/verification.hpp"

#include <algorithm>
#include <cmath>

#include "ptgauge/classical_mechanics.hpp"
#include "ptgauge/errors.hpp"
#include "ptgauge/quantum_dynamics.hpp"

namespace ptgauge {

KernelDeviation kernel_deviation(const OperatorMatrix& transformed, double gamma, int block) {
  KernelDeviation d;
  block = std::min(block, transformed.dim());
  for (int j = 0; j < block; ++j) {
    for (int i = 0; i < block; ++i) {
      const Complex v = transformed(i, j);
      if (i == j) {
        d.diagonal = std::max(d.diagonal, std::abs(v - gamma * (i + 0.5)));
      } else {
        d.off_diagonal = std::max(d.off_diagonal, std::abs(v));
      }
    }
  }
  return d;
}

namespace {

CheckResult judge(std::string name, double residual, double tol, std::string note = {}) {
  CheckResult c{std::move(name), residual, tol, CheckStatus::Failed, std::move(note)};
  c.status = residual <= tol ? CheckStatus::Passed : CheckStatus::Failed;
  return c;
}

CheckResult skipped(std::string name, double tol, std::string note) {
  return {std::move(name), std::nan(""), tol, CheckStatus::Skipped, std::move(note)};
}

}  // namespace

std::vector<CheckResult> run_verification(const ModelParams& params,
                                          const VerifyOptions& options) {
  params.validate();
  const GaugeSolution gauge = solve_auxiliary(params);
  const double t = options.time;
  std::vector<CheckResult> out;

  {
    const FockSpace space(16, 2);
    const auto g = build_su11(space);
    const double r = std::max({interior_residual(commutator(g.sz, g.splus), g.splus),
                               interior_residual(commutator(g.sz, g.sminus), -1.0 * g.sminus),
                               interior_residual(commutator(g.splus, g.sminus), -2.0 * g.sz)});
    out.push_back(judge("su11_commutators", r, 1e-12));
    const OperatorMatrix pi = parity_operator(space);
    const double p = std::max({max_abs((pi * g.sz * pi - g.sz).entries()),
                               max_abs((pi * g.splus * pi - g.splus).entries()),
                               max_abs((pi * g.sminus * pi - g.sminus).entries())});
    out.push_back(judge("parity_invariance", p, 0.0));
  }
  {
    const FockSpace space(32, 4);
    out.push_back(judge("pt_hamiltonian", pt_check(params, t, space), 1e-12));
    const double ptk = pt_residual(gauge_transform(params, gauge, -t, space),
                                   gauge_transform(params, gauge, t, space));
    out.push_back(judge("pt_kernel", ptk, 1e-12));
  }
  out.push_back(judge("auxiliary_equation", auxiliary_residual(params, gauge), 1e-12));

  {
    BchOptions bo;
    bo.inject_fault = options.inject_fault;
    const FockSpace space(options.bch_cutoff, options.bch_margin);
    try {
      const BchResidual r = verify_bch(params, gauge, t, space, bo);
      out.push_back(judge("bch_splus", r.splus, 1e-8));
      out.push_back(judge("bch_sminus", r.sminus, 1e-8));
      out.push_back(judge("bch_sz", r.sz, 1e-8));
      out.push_back(judge("bch_connection", r.connection, 1e-8));
    } catch (const ExponentialDidNotConverge& e) {
      out.push_back(judge("bch", std::nan(""), 1e-8, e.what()));
    }
  }

  {
    const double scale = std::max(1.0, std::abs(gauge.gamma));
    const int block = 32;
    const FockSpace space(block + 8, 4);
    double worst = 0.0;
    for (double frac : {0.0, 1.0 / 7.0, 1.0 / 3.0, 0.5}) {
      worst = std::max(worst,
                       kernel_deviation(gauge_transform(params, gauge, frac * gauge.period, space),
                                        gauge.gamma, block).max());
    }
    out.push_back(judge("kernel_algebraic", worst / scale, 1e-8));
  }

  const CutoffCertificate cert = assess_cutoff(gauge, options.state_count, options.policy);
  if (!cert.certified) {
    const std::string why = "cutoff not certified: " + cert.diagnostic;
    out.push_back(skipped("kernel_similarity", 1e-8, why));
    out.push_back(skipped("biorthonormality", 1e-8, why));
    out.push_back(skipped("metric", 1e-10, why));
  } else {
    const FockSpace space = cert.space();
    const double scale = std::max(1.0, std::abs(gauge.gamma));
    GaugeTransformOptions go;
    go.route = GaugeRoute::Similarity;
    double worst = 0.0;
    for (double frac : {0.0, 1.0 / 7.0, 1.0 / 3.0, 0.5}) {
      worst = std::max(worst, kernel_deviation(gauge_transform(params, gauge, frac * gauge.period,
                                                               space, go),
                                               gauge.gamma, options.state_count)
                                  .max());
    }
    out.push_back(judge("kernel_similarity", worst / scale, 1e-8));

    std::vector<BiorthogonalState> states;
    for (int n = 0; n < options.state_count; ++n) {
      states.push_back(gauge_solution_state(params, gauge, n, t, space));
    }
    const CMatrix gram = gram_matrix(states);
    const auto k = static_cast<Eigen::Index>(states.size());
    out.push_back(judge("biorthonormality", max_abs(gram - CMatrix::Identity(k, k)), 1e-8));
    double metric = 0.0;
    for (const auto& s : states) {
      metric = std::max(metric, (apply_metric(gauge, t, s.ket) - s.bra).cwiseAbs().maxCoeff());
    }
    out.push_back(judge("metric", metric, 1e-10));
  }

  out.push_back(judge("classical_gauge_equivalence",
                      verify_gauge_equivalence(params, gauge, options.classical_samples, 20240611),
                      1e-10));
  {
    double worst = 0.0;
    for (double frac : {0.0, 1.0 / 7.0, 1.0 / 3.0}) {
      const QuadraticForm f = transformed_form(params, gauge, frac * gauge.period);
      worst = std::max({worst, std::abs(f.xx - 0.5 * gauge.gamma), std::abs(f.pp - 0.5 * gauge.gamma),
                        std::abs(f.xp)});
    }
    out.push_back(judge("classical_kernel_coefficients",
                        worst / std::max(1.0, std::abs(gauge.gamma)), 1e-12));
    double det = 0.0;
    for (double frac : {0.0, 0.2, 0.45, 0.8}) {
      det = std::max(det, std::abs(canonical_matrix(frac * gauge.period, gauge).determinant() - 1.0));
    }
    out.push_back(judge("canonical_determinant", det, 1e-14));
  }
  return out;
}

}  // namespace ptgauge
