#include "doctest.h"

#include <cmath>
#include <numbers>

#include "ptgauge/classical_mechanics.hpp"
#include "ptgauge/errors.hpp"
#include "support/generators.hpp"

using namespace ptgauge;
using testing::acceptance_params;
using std::numbers::pi;

TEST_CASE("classical Hamiltonian") {
  const ModelParams free{2.0, 0.0, 1.0, Branch::Minus};
  const ComplexPhasePoint z{0.3, -1.1, 0.4};
  CHECK(std::abs(classical_hamiltonian(z, free) - 0.5 * (0.09 + 1.21)) < 1e-15);
  CHECK(std::abs(classical_hamiltonian({1.0, 0.0, 0.0}, acceptance_params(Branch::Plus)) - 0.5) < 1e-15);
}

TEST_CASE("classical Hamiltonian matches coherent-state expectation values") {
  // <alpha|H|alpha> with alpha = (x + i p) / sqrt(2) equals H_cl(x, p) plus the
  // zero-point term Omega / 4.
  const auto p = acceptance_params(Branch::Plus);
  const int n = 90;
  const FockSpace s(n);
  for (double t : {0.0, 0.9, 2.3}) {
    const double x = 0.7, q = -1.2;
    const Complex alpha = Complex(x, q) / std::sqrt(2.0);
    CVector coh(n);
    coh(0) = std::exp(-std::norm(alpha) / 2);
    for (int k = 1; k < n; ++k) coh(k) = coh(k - 1) * alpha / std::sqrt(double(k));
    const Complex quantum = coh.dot(build_hamiltonian(p, t, s).entries() * coh);
    const Complex classical = classical_hamiltonian({x, q, t}, p) + p.omega_cap / 4;
    CHECK(std::abs(quantum - classical) < 1e-12);
  }
}

TEST_CASE("canonical map") {
  const auto g0 = solve_auxiliary({2.0, 0.0, 1.0, Branch::Minus});
  const auto [x0, p0] = canonical_map(Complex(0.4, 0.1), Complex(-0.2, 0.5), 0.8, g0);
  CHECK(std::abs(x0 - Complex(0.4, 0.1)) < 1e-16);
  CHECK(std::abs(p0 - Complex(-0.2, 0.5)) < 1e-16);

  testing::Engine rng(33);
  for (int i = 0; i < 100; ++i) {
    const auto g = solve_auxiliary(testing::random_params(rng));
    const double t = testing::uniform(rng, -20, 20);
    CHECK(std::abs(canonical_matrix(t, g).determinant() - 1.0) < 1e-14);
    const Complex X = testing::complex_uniform(rng, 2), P = testing::complex_uniform(rng, 2);
    const auto [x, p] = canonical_map(X, P, t, g);
    const auto [Xb, Pb] = inverse_canonical_map(x, p, t, g);
    CHECK(std::abs(Xb - X) + std::abs(Pb - P) < 1e-12);
  }
}

TEST_CASE("canonical map is PT covariant") {
  const auto g = solve_auxiliary(acceptance_params(Branch::Plus));
  testing::Engine rng(4);
  for (int i = 0; i < 20; ++i) {
    const double X = testing::uniform(rng, -2, 2), P = testing::uniform(rng, -2, 2);
    const double t = testing::uniform(rng, 0, 7);
    const auto [x, p] = canonical_map(X, P, t, g);
    const auto [xr, pr] = canonical_map(-X, P, -t, g);
    CHECK(std::abs(std::conj(xr) + x) < 1e-14);
    CHECK(std::abs(std::conj(pr) - p) < 1e-14);
  }
}

TEST_CASE("generating function") {
  const auto g0 = solve_auxiliary({2.0, 0.0, 1.0, Branch::Minus});
  CHECK(generating_function(1.3, -0.7, 0.4, g0) == Complex(0.0));
  const auto g = solve_auxiliary(acceptance_params(Branch::Plus));
  CHECK(std::abs(generating_function(1.3, -0.7, pi / 2, g)) < 1e-15);
  const Complex X(0.3, 0.2), P(-0.5, 0.9);
  const double lambda = 2.5;
  CHECK(std::abs(generating_function(lambda * X, lambda * P, 0.4, g) -
                 lambda * lambda * generating_function(X, P, 0.4, g)) < 1e-14);

  const double h = 1e-6, t = 0.6;
  const auto grad = generating_gradient(X, P, t, g);
  const Complex dX = (generating_function(X + h, P, t, g) - generating_function(X - h, P, t, g)) / (2 * h);
  const Complex dP = (generating_function(X, P + h, t, g) - generating_function(X, P - h, t, g)) / (2 * h);
  const Complex dt = (generating_function(X, P, t + h, g) - generating_function(X, P, t - h, g)) / (2 * h);
  CHECK(std::abs(grad.dX - dX) < 1e-9);
  CHECK(std::abs(grad.dP - dP) < 1e-9);
  CHECK(std::abs(grad.dt - dt) < 1e-9);
}

TEST_CASE("Lagrangian gauge equivalence") {
  for (Branch b : {Branch::Plus, Branch::Minus}) {
    const auto p = acceptance_params(b);
    CHECK(verify_gauge_equivalence(p, solve_auxiliary(p), 1000, 20240611) < 1e-10);
  }
  const ModelParams free{2.0, 0.0, 1.0, Branch::Minus};
  CHECK(verify_gauge_equivalence(free, solve_auxiliary(free), 200, 1) < 1e-15);
  CHECK_THROWS_AS(verify_gauge_equivalence(free, solve_auxiliary(free), 0, 1), InvalidArgument);
}

TEST_CASE("transformed Hamiltonian is the static oscillator") {
  testing::Engine rng(8);
  for (Branch b : {Branch::Plus, Branch::Minus}) {
    const auto p = acceptance_params(b);
    const auto g = solve_auxiliary(p);
    const auto th = transformed_hamiltonian(p, g);
    CHECK(std::abs(th.gamma - g.gamma) < 1e-12);
    CHECK(th.max_deviation < 1e-12);
    for (int i = 0; i < 10; ++i) {
      const auto f = transformed_form(p, g, testing::uniform(rng, 0, 50));
      CHECK(std::abs(f.xp) < 1e-12);
      CHECK(std::abs(f.xx - g.gamma / 2) < 1e-12);
      CHECK(std::abs(f.pp - g.gamma / 2) < 1e-12);
    }
  }
  const ModelParams free{2.0, 0.0, 1.0, Branch::Minus};
  const auto f = transformed_form(free, solve_auxiliary(free), 0.7);
  CHECK(std::abs(f.xx - 0.5) < 1e-15);
  CHECK(std::abs(f.pp - 0.5) < 1e-15);
}

TEST_CASE("action-angle variables") {
  const auto [x0, p0] = action_angle_map({0.0, 1.2});
  CHECK(x0 == 0.0);
  CHECK(p0 == 0.0);
  const auto p = acceptance_params(Branch::Minus);
  const auto g = solve_auxiliary(p);
  const auto f = transformed_form(p, g, 0.0);
  for (double angle : {0.0, 1.0, 4.0}) {
    const auto [X, P] = action_angle_map({1.7, angle});
    CHECK(X * X + P * P == doctest::Approx(3.4).epsilon(1e-15));
    const Complex h = f.xx * X * X + f.pp * P * P + f.xp * X * P;
    CHECK(std::abs(h - g.gamma * 1.7) < 1e-12);
  }
}

TEST_CASE("Hannay angle") {
  const ModelParams free{2.0, 0.0, 1.0, Branch::Minus};
  const auto gf = solve_auxiliary(free);
  CHECK(hannay_angle_closed(gf) == 0.0);
  CHECK(std::abs(hannay_angle_quadrature(free, gf).dtheta) < 1e-12);
  const ModelParams flipped{2.0, 0.0, 1.0, Branch::Plus};
  CHECK(hannay_angle_closed(solve_auxiliary(flipped)) == doctest::Approx(-2 * pi));

  const auto p = acceptance_params(Branch::Minus);
  const auto g = solve_auxiliary(p);
  CHECK(hannay_angle_closed(g) == doctest::Approx(pi * (3 / std::sqrt(10.0) - 1)).epsilon(1e-14));
  const auto q = hannay_angle_quadrature(p, g);
  CHECK(std::abs(q.dtheta - hannay_angle_closed(g)) < 1e-8);
  CHECK(q.imag_residual < 1e-10);
  CHECK(std::abs(q.bracket2 - 2.0 * q.bracket1) < 1e-12);
  CHECK(q.linearity_residual < 1e-12);
}

TEST_CASE("quantum-classical correspondence") {
  for (Branch b : {Branch::Plus, Branch::Minus}) {
    const auto r = correspondence_check(acceptance_params(b), 0);
    CHECK(std::abs(r.correspondence_residual) < 1e-7);
    CHECK(r.magnitude_residual < 1e-7);
    CHECK(r.realized_sign == -1);
    CHECK(r.branch == b);
  }
  const auto free = correspondence_check({2.0, 0.0, 1.0, Branch::Minus}, 3);
  CHECK(std::abs(free.gamma_n) < 1e-12);
  CHECK(std::abs(free.correspondence_residual) < 1e-12);
}

TEST_CASE("classical trajectories") {
  const ModelParams free{2.0, 0.0, 1.0, Branch::Minus};
  const auto tf = integrate_trajectory(free, solve_auxiliary(free), {1.0, 0.0, 0.0}, 3.0);
  const auto& end = tf.points.back();
  CHECK(std::abs(end.x - std::cos(3.0)) < 1e-9);
  CHECK(std::abs(end.p + std::sin(3.0)) < 1e-9);
  for (const auto& z : tf.points) CHECK(std::abs(std::norm(z.x) + std::norm(z.p) - 1.0) < 1e-9);

  for (Branch b : {Branch::Plus, Branch::Minus}) {
    const auto p = acceptance_params(b);
    const auto g = solve_auxiliary(p);
    const auto tr = integrate_trajectory(p, g, {1.0, 0.0, 0.0}, g.period);
    CHECK(tr.endpoint_error < 1e-8);
    CHECK(tr.invariant_drift < 1e-10);
  }
  CHECK_THROWS_AS(integrate_trajectory(free, solve_auxiliary(free), {1.0, 0.0, 1.0}, 0.5), InvalidArgument);
}
