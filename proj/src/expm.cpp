#include "ptgauge/numerics/expm.hpp"

#include <array>
#include <cmath>

#include "ptgauge/errors.hpp"

namespace ptgauge::numerics {

namespace {

constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0,  129060195264000.0,   10559470521600.0,
    670442572800.0,      33522128640.0,       1323241920.0,
    40840800.0,          960960.0,            16380.0,
    182.0,               1.0};

constexpr std::array<double, 5> kTheta = {1.495585217958292e-2, 2.539398330063230e-1,
                                          9.504178996162932e-1, 2.097847961257068e0,
                                          5.371920351148152e0};

using Mat = Eigen::MatrixXcd;

Mat pade_low(const Mat& a, int m) {
  static constexpr double c3[] = {120, 60, 12, 1};
  static constexpr double c5[] = {30240, 15120, 3360, 420, 30, 1};
  static constexpr double c7[] = {17297280, 8648640, 1995840, 277200, 25200, 1512, 56, 1};
  static constexpr double c9[] = {17643225600.0, 8821612800.0, 2075673600.0, 302702400.0,
                                  30270240.0,    2162160.0,    110880.0,     3960.0,
                                  90.0,          1.0};
  const double* c = m == 3 ? c3 : m == 5 ? c5 : m == 7 ? c7 : c9;
  const auto n = a.rows();
  const Mat ident = Mat::Identity(n, n);
  const Mat a2 = a * a;
  Mat pow = ident;
  Mat u = Mat::Zero(n, n), v = Mat::Zero(n, n);
  for (int k = 0; k <= m; k += 2) {
    v += c[k] * pow;
    u += c[k + 1] * pow;
    pow = pow * a2;
  }
  u = a * u;
  return (v - u).partialPivLu().solve(v + u);
}

}  // namespace

Mat expm(const Mat& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("expm needs a square matrix");
  const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
  if (!std::isfinite(norm)) throw ExponentialDidNotConverge("expm input is not finite");

  constexpr std::array<int, 4> low_orders = {3, 5, 7, 9};
  for (int i = 0; i < 4; ++i) {
    if (norm <= kTheta[i]) return pade_low(a, low_orders[i]);
  }

  int s = 0;
  if (norm > kTheta[4]) s = static_cast<int>(std::ceil(std::log2(norm / kTheta[4])));
  const Mat as = a / std::ldexp(1.0, s);
  const auto n = a.rows();
  const Mat ident = Mat::Identity(n, n);
  const Mat a2 = as * as, a4 = a2 * a2, a6 = a4 * a2;
  const auto& b = kPade13;
  Mat u = as * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
                b[3] * a2 + b[1] * ident);
  Mat v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 +
          b[2] * a2 + b[0] * ident;
  Mat r = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < s; ++k) r = r * r;
  if (!r.allFinite()) throw ExponentialDidNotConverge("expm overflowed double precision");
  return r;
}

}  // namespace ptgauge::numerics
