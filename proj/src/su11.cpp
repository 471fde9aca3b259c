#include "ptgauge/su11.hpp"

#include <cmath>
#include <string>

#include "ptgauge/errors.hpp"

namespace ptgauge {

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
  return {a.sz + b.sz, a.splus + b.splus, a.sminus + b.sminus};
}

AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
  return {a.sz - b.sz, a.splus - b.splus, a.sminus - b.sminus};
}

AlgebraElement operator*(Complex s, const AlgebraElement& a) {
  return {s * a.sz, s * a.splus, s * a.sminus};
}

Mat2 to_defining(const AlgebraElement& a) {
  Mat2 m;
  m << 0.5 * a.sz, a.splus, -a.sminus, -0.5 * a.sz;
  return m;
}

AlgebraElement from_defining(const Mat2& m) {
  return {m(0, 0) - m(1, 1), m(0, 1), -m(1, 0)};
}

double trace_defect(const Mat2& m) { return std::abs(m.trace()); }

OperatorMatrix to_fock(const AlgebraElement& a, const FockSpace& space) {
  const auto gens = build_su11(space);
  CMatrix m = a.sz * gens.sz.entries() + a.splus * gens.splus.entries() +
              a.sminus * gens.sminus.entries();
  return {space, std::move(m)};
}

Mat2 hyperbolic_exp(double c, double phi) {
  const Complex e = std::polar(1.0, phi);
  Mat2 m;
  m << std::cos(c), e * std::sin(c), -std::conj(e) * std::sin(c), std::cos(c);
  return m;
}

Mat2 hyperbolic_exp_dphi(double c, double phi) {
  const Complex ie = Complex(0.0, 1.0) * std::polar(1.0, phi);
  Mat2 m;
  m << 0.0, ie * std::sin(c), -std::conj(ie) * std::sin(c), 0.0;
  return m;
}

NormalOrdered normal_order(const Mat2& g, Complex sqrt_d) {
  const Complex d = g(1, 1);
  if (std::abs(d) < 1e-300 || !std::isfinite(std::abs(d))) {
    throw ExponentialDidNotConverge(
        "group element has no normal-ordered factorisation (d = 0)");
  }
  return {g(0, 1) / d, -g(1, 0) / d, sqrt_d};
}

NormalOrdered hyperbolic_normal_order(double c, double phi) {
  const double cc = std::cos(c);
  if (!(cc > 0.0)) {
    throw ExponentialDidNotConverge(
        "exp(c K) with cos c = " + std::to_string(cc) +
        " has no normal-ordered form on the principal sheet");
  }
  const double t = std::tan(c);
  return {std::polar(t, phi), std::polar(t, -phi), Complex(std::sqrt(cc), 0.0)};
}

namespace {

// Column j of exp(A S+): entries at rows j + 2k are
//   A^k / (k! 2^k) sqrt((j+2k)! / j!)
// generated by the ratio A sqrt((j+2k-1)(j+2k)) / (2k).
template <class Sink>
void raise_column(Complex a, int j, int cutoff, Sink&& sink) {
  Complex coef(1.0, 0.0);
  sink(j, coef);
  if (a == Complex(0.0)) return;
  for (int k = 1; j + 2 * k < cutoff; ++k) {
    const int m = j + 2 * k;
    coef *= a * std::sqrt(double(m - 1) * m) / (2.0 * k);
    sink(m, coef);
  }
}

// d^{-(j+1/2)} for j = 0..cutoff-1 from the supplied root of d.
CVector diagonal_factors(Complex sqrt_d, int cutoff) {
  CVector diag(cutoff);
  const Complex d = sqrt_d * sqrt_d;
  Complex v = 1.0 / sqrt_d;
  for (int j = 0; j < cutoff; ++j) {
    diag(j) = v;
    v /= d;
  }
  return diag;
}

void require_finite(const CVector& v, const char* what) {
  if (!v.allFinite()) {
    throw ExponentialDidNotConverge(std::string("lifted ") + what +
                                    " overflowed double precision");
  }
}

}  // namespace

CMatrix lift(const NormalOrdered& g, int cutoff) {
  CMatrix lower = CMatrix::Zero(cutoff, cutoff);
  CMatrix upper = CMatrix::Zero(cutoff, cutoff);
  for (int j = 0; j < cutoff; ++j) {
    raise_column(g.raise, j, cutoff, [&](int m, Complex c) { lower(m, j) = c; });
    // exp(C S-) is the transpose of exp(C S+) in this real basis.
    raise_column(g.lower, j, cutoff, [&](int m, Complex c) { upper(j, m) = c; });
  }
  const CVector diag = diagonal_factors(g.sqrt_d, cutoff);
  CMatrix out = lower.triangularView<Eigen::Lower>() * (diag.asDiagonal() * upper);
  if (!out.allFinite()) {
    throw ExponentialDidNotConverge("lifted group element overflowed double precision");
  }
  return out;
}

CVector lift_column(const NormalOrdered& g, int n, int cutoff) {
  const CVector diag = diagonal_factors(g.sqrt_d, std::min(n + 1, cutoff));
  CVector out = CVector::Zero(cutoff);
  // Upper factor column n has entries at rows j = n - 2k; raise_column walks
  // upward from j, so accumulate weights w_j = U(j, n) D_j first.
  CVector w = CVector::Zero(n + 1);
  for (int j = n % 2; j <= n; j += 2) {
    raise_column(g.lower, j, n + 1, [&](int m, Complex c) {
      if (m == n) w(j) = c * diag(j);
    });
  }
  for (int j = n % 2; j <= n; j += 2) {
    if (w(j) == Complex(0.0)) continue;
    raise_column(g.raise, j, cutoff, [&](int m, Complex c) { out(m) += c * w(j); });
  }
  require_finite(out, "column");
  return out;
}

Complex lift_diagonal(const NormalOrdered& g, int n) {
  const CVector diag = diagonal_factors(g.sqrt_d, n + 1);
  Complex sum(0.0);
  for (int j = n % 2; j <= n; j += 2) {
    Complex up(0.0), low(0.0);
    raise_column(g.lower, j, n + 1, [&](int m, Complex c) { if (m == n) up = c; });
    raise_column(g.raise, j, n + 1, [&](int m, Complex c) { if (m == n) low = c; });
    sum += low * diag(j) * up;
  }
  return sum;
}

CVector lift_apply(const NormalOrdered& g, const CVector& v) {
  const int cutoff = static_cast<int>(v.size());
  const CVector diag = diagonal_factors(g.sqrt_d, cutoff);
  CVector w = CVector::Zero(cutoff);
  for (int j = 0; j < cutoff; ++j) {
    raise_column(g.lower, j, cutoff, [&](int m, Complex c) { w(j) += c * v(m); });
    w(j) *= diag(j);
  }
  CVector out = CVector::Zero(cutoff);
  for (int j = 0; j < cutoff; ++j) {
    if (w(j) == Complex(0.0)) continue;
    raise_column(g.raise, j, cutoff, [&](int m, Complex c) { out(m) += c * w(j); });
  }
  require_finite(out, "state");
  return out;
}

Complex continue_sqrt(Complex d, Complex previous) {
  const Complex r = std::sqrt(d);
  return std::abs(r - previous) <= std::abs(r + previous) ? r : -r;
}

}  // namespace ptgauge
