#include "doctest.h"

#include <cmath>
#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

#include "ptgauge/errors.hpp"
#include "ptgauge/numerics/expm.hpp"
#include "ptgauge/numerics/ode.hpp"
#include "ptgauge/numerics/quadrature.hpp"
#include "support/generators.hpp"

using namespace ptgauge;
using namespace ptgauge::numerics;
using std::numbers::pi;

TEST_CASE("Gauss-Legendre is exact to degree 2n-1") {
  for (int n : {1, 2, 5, 16}) {
    const auto r = gauss_legendre(n);
    REQUIRE(r.nodes.size() == static_cast<std::size_t>(n));
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double sum = 0;
      for (int i = 0; i < n; ++i) sum += r.weights[i] * std::pow(r.nodes[i], k);
      const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
      CHECK(sum == doctest::Approx(exact).epsilon(1e-14));
    }
  }
}

TEST_CASE("Gauss-Kronrod on smooth and oscillatory integrands") {
  auto r = gauss_kronrod([](double x) { return std::complex<double>(std::exp(x), std::cos(x)); },
                         0.0, 1.0, 1e-13);
  CHECK(std::abs(r.value - std::complex<double>(std::exp(1.0) - 1, std::sin(1.0))) < 1e-13);
  r = gauss_kronrod([](double x) { return std::complex<double>(std::cos(40 * x), 0); }, 0.0, pi,
                    1e-12);
  CHECK(std::abs(r.value) < 1e-12);
  r = gauss_kronrod([](double x) { return std::complex<double>(std::sqrt(x), 0); }, 0.0, 1.0,
                    1e-10);
  CHECK(std::abs(r.value - 2.0 / 3) < 1e-10);
  CHECK_THROWS_AS(gauss_kronrod([](double x) { return std::complex<double>(1 / std::sqrt(x), 0); },
                                0.0, 1.0, 1e-15, 0.0, 3),
                  QuadratureNotConverged);
}

TEST_CASE("expm against Eigen's MatrixFunctions") {
  testing::Engine rng(3);
  for (double scale : {1e-3, 0.5, 4.0, 40.0}) {
    for (int n : {2, 6, 15}) {
      Eigen::MatrixXcd a(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = testing::complex_uniform(rng, scale / n);
      const Eigen::MatrixXcd oracle = a.exp();
      CHECK((expm(a) - oracle).norm() <= 1e-12 * std::max(1.0, oracle.norm()));
    }
  }
  CHECK((expm(Eigen::MatrixXcd::Zero(4, 4)) - Eigen::MatrixXcd::Identity(4, 4)).norm() == 0.0);
}

TEST_CASE("Dormand-Prince on a rotating linear system") {
  const double w = 3.0;
  auto rhs = [w](double, const Eigen::Vector2cd& y) {
    return Eigen::Vector2cd(-std::complex<double>(0, 1) * w * y(0), std::complex<double>(0, 1) * y(1));
  };
  OdeOptions opt;
  opt.rel_tol = 1e-11;
  opt.abs_tol = 1e-13;
  int observed = 0;
  const auto sol = dormand_prince(rhs, 0.0, 2.0, Eigen::Vector2cd(1.0, 2.0), opt,
                                  [&](double, const Eigen::Vector2cd&) { ++observed; });
  CHECK(sol.times.front() == 0.0);
  CHECK(sol.times.back() == 2.0);
  CHECK(observed == sol.stats.accepted);
  CHECK(std::abs(sol.states.back()(0) - std::polar(1.0, -w * 2.0)) < 1e-9);
  CHECK(std::abs(sol.states.back()(1) - std::polar(2.0, 2.0)) < 1e-9);
}

TEST_CASE("Dormand-Prince reports stalls") {
  auto blowup = [](double t, const Eigen::VectorXd& y) {
    return Eigen::VectorXd((y.array().square() / (1.0 - t)).matrix());
  };
  OdeOptions opt;
  opt.max_steps = 50;
  CHECK_THROWS_AS(dormand_prince(blowup, 0.0, 2.0, Eigen::VectorXd::Ones(1).eval(), opt),
                  StepSizeUnderflow);
}
