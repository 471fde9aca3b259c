#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace ptgauge::numerics {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule by Newton iteration on P_n.
GaussRule gauss_legendre(int n);

struct QuadratureResult {
  std::complex<double> value;
  double error_estimate = 0.0;
  int intervals = 0;
  int evaluations = 0;
};

/// Globally adaptive Gauss-Kronrod (7, 15) quadrature of a complex integrand
/// on [a, b]. Subdivides the interval with the largest error estimate until
/// the summed estimate is below max(abs_tol, rel_tol |I|). Throws
/// QuadratureNotConverged when max_intervals is exhausted.
QuadratureResult gauss_kronrod(const std::function<std::complex<double>(double)>& f,
                               double a, double b, double abs_tol,
                               double rel_tol = 0.0, int max_intervals = 2000);

}  // namespace ptgauge::numerics
