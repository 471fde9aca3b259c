#include "doctest.h"

#include <cmath>

#include "ptgauge/errors.hpp"
#include "ptgauge/numerics/expm.hpp"
#include "ptgauge/su11.hpp"
#include "support/generators.hpp"

using namespace ptgauge;

namespace {

// Dense exponential of c (e^{i phi} S+ + e^{-i phi} S-) on a space much larger
// than the compared block, so truncation stays far below double precision.
CMatrix dense_hyperbolic(double c, double phi, int cutoff) {
  const FockSpace s(cutoff);
  const AlgebraElement k{0.0, c * std::polar(1.0, phi), c * std::polar(1.0, -phi)};
  return numerics::expm(to_fock(k, s).entries());
}

}  // namespace

TEST_CASE("defining representation round trip") {
  testing::Engine rng(11);
  for (int i = 0; i < 50; ++i) {
    const AlgebraElement a{testing::complex_uniform(rng, 3), testing::complex_uniform(rng, 3),
                           testing::complex_uniform(rng, 3)};
    const auto b = from_defining(to_defining(a));
    CHECK(std::abs(a.sz - b.sz) < 1e-15);
    CHECK(std::abs(a.splus - b.splus) < 1e-15);
    CHECK(std::abs(a.sminus - b.sminus) < 1e-15);
    CHECK(trace_defect(to_defining(a)) < 1e-15);
  }
}

TEST_CASE("defining representation preserves the brackets") {
  const Mat2 sz = to_defining({1.0, 0.0, 0.0});
  const Mat2 sp = to_defining({0.0, 1.0, 0.0});
  const Mat2 sm = to_defining({0.0, 0.0, 1.0});
  CHECK((sz * sp - sp * sz - sp).norm() == 0.0);
  CHECK((sz * sm - sm * sz + sm).norm() == 0.0);
  CHECK((sp * sm - sm * sp + 2.0 * sz).norm() == 0.0);
}

TEST_CASE("hyperbolic exponential against Pade expm") {
  for (double c : {-0.6, -0.1, 0.3, 1.1}) {
    for (double phi : {0.0, 0.7, 2.5}) {
      const Mat2 k = to_defining({0.0, c * std::polar(1.0, phi), c * std::polar(1.0, -phi)});
      CHECK((hyperbolic_exp(c, phi) - Mat2(numerics::expm(k))).norm() < 1e-14);
      const double h = 1e-5;
      const Mat2 fd = (hyperbolic_exp(c, phi + h) - hyperbolic_exp(c, phi - h)) / (2 * h);
      CHECK((hyperbolic_exp_dphi(c, phi) - fd).norm() < 1e-9);
    }
  }
}

TEST_CASE("normal-ordered lift equals the dense exponential") {
  for (double c : {-0.3, 0.2, 0.55}) {
    const double phi = 0.9;
    const auto no = hyperbolic_normal_order(c, phi);
    const CMatrix exact = lift(no, 24);
    const CMatrix dense = dense_hyperbolic(c, phi, 100);
    const double scale = max_abs(exact);
    CHECK(max_abs(exact - dense.topLeftCorner(24, 24)) < 1e-14 * scale);
    for (int n : {0, 3, 10}) {
      CHECK((lift_column(no, n, 24) - exact.col(n)).cwiseAbs().maxCoeff() < 1e-15 * scale);
      CHECK(std::abs(lift_diagonal(no, n) - exact(n, n)) < 1e-15 * scale);
    }
  }
}

TEST_CASE("lift is a homomorphism on the exact block") {
  // exp(c K) exp(-c K) = I: the product of truncated lifts is exact on the
  // columns whose image stays inside the space.
  const auto a = hyperbolic_normal_order(0.4, 1.3);
  const auto b = hyperbolic_normal_order(-0.4, 1.3);
  const CMatrix la = lift(a, 200), lb = lift(b, 200);
  const CMatrix p = la * lb;
  const Eigen::MatrixXd scale = la.cwiseAbs() * lb.cwiseAbs();
  CHECK(((p - CMatrix::Identity(200, 200)).cwiseAbs().array() / scale.array())
            .topLeftCorner(20, 20).maxCoeff() < 1e-14);
}

TEST_CASE("lift_apply agrees with the matrix product") {
  testing::Engine rng(5);
  const auto g = hyperbolic_normal_order(0.25, -0.4);
  CVector v = CVector::Zero(60);
  for (int i = 0; i < 10; ++i) v(i) = testing::complex_uniform(rng, 1);
  const CVector direct = lift(g, 60) * v;
  CHECK((lift_apply(g, v) - direct).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("normal order factorisation") {
  const Mat2 g = hyperbolic_exp(0.3, 0.2);
  const auto no = normal_order(g, std::sqrt(g(1, 1)));
  const Mat2 raise = Mat2::Identity() + to_defining({0.0, no.raise, 0.0});  // nilpotent
  const Mat2 lower = Mat2::Identity() + to_defining({0.0, 0.0, no.lower});
  Mat2 mid = Mat2::Zero();
  const Complex d = no.sqrt_d * no.sqrt_d;
  mid(0, 0) = 1.0 / d;
  mid(1, 1) = d;
  CHECK((raise * mid * lower - g).norm() < 1e-14);

  Mat2 singular;
  singular << 0, 1, -1, 0;
  CHECK_THROWS_AS(normal_order(singular, 0.0), ExponentialDidNotConverge);
  CHECK_THROWS(hyperbolic_normal_order(2.0, 0.0));
}

TEST_CASE("square root continuation") {
  const Complex prev(0.0, 1.0);
  CHECK(std::abs(continue_sqrt(Complex(-1.0, 1e-3), prev) - std::sqrt(Complex(-1.0, 1e-3))) < 1e-15);
  CHECK(std::abs(continue_sqrt(Complex(-1.0, -1e-3), prev) + std::sqrt(Complex(-1.0, -1e-3))) < 1e-15);
}
