#pragma once

#include <Eigen/Dense>

namespace ptgauge::numerics {

/// exp(A) for a general complex square matrix by scaling and squaring with a
/// degree-13 diagonal Pade approximant (Higham 2005 thresholds). Throws
/// ExponentialDidNotConverge when the result is not finite.
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a);

}  // namespace ptgauge::numerics
