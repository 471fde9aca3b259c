#include "ptgauge/numerics/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>

#include "ptgauge/errors.hpp"

namespace ptgauge::numerics {

GaussRule gauss_legendre(int n) {
  if (n < 1) throw InvalidArgument("Gauss-Legendre order must be positive");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

namespace {

// Kronrod 15-point nodes (non-negative half) and weights; the Gauss 7-point
// rule uses the odd-indexed nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b;
  std::complex<double> value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment kronrod_segment(const std::function<std::complex<double>(double)>& f,
                        double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const auto fc = f(c);
  std::complex<double> k = fc * kWgk[7];
  std::complex<double> g = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const auto f1 = f(c - h * kXgk[j]);
    const auto f2 = f(c + h * kXgk[j]);
    k += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) g += kWg[j / 2] * (f1 + f2);
  }
  return {a, b, k * h, std::abs((k - g) * h)};
}

}  // namespace

QuadratureResult gauss_kronrod(const std::function<std::complex<double>(double)>& f,
                               double a, double b, double abs_tol, double rel_tol,
                               int max_intervals) {
  if (!(b > a)) throw InvalidArgument("quadrature interval must satisfy b > a");
  std::priority_queue<Segment> heap;
  heap.push(kronrod_segment(f, a, b));
  std::complex<double> total = heap.top().value;
  double error = heap.top().error;
  int evaluations = 15;

  while (error > std::max(abs_tol, rel_tol * std::abs(total))) {
    if (static_cast<int>(heap.size()) >= max_intervals) {
      throw QuadratureNotConverged("adaptive quadrature did not reach tolerance " +
                                   std::to_string(abs_tol) + " (estimate " +
                                   std::to_string(error) + ")");
    }
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Segment left = kronrod_segment(f, worst.a, mid);
    const Segment right = kronrod_segment(f, mid, worst.b);
    evaluations += 30;
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    // Rounding in the running sums can leave a tiny negative drift.
    error = std::max(error, 0.0);
  }

  QuadratureResult result;
  result.intervals = static_cast<int>(heap.size());
  result.evaluations = evaluations;
  // Re-sum from the segments to shed accumulated update rounding.
  std::complex<double> sum(0.0);
  double err = 0.0;
  while (!heap.empty()) {
    sum += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  result.value = sum;
  result.error_estimate = err;
  return result;
}

}  // namespace ptgauge::numerics
