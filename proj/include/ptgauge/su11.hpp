#pragma once

// The two-dimensional defining representation of complexified su(1,1) and its
// exact lift to the truncated boson Fock space.
//
// Generators are represented as
//   Sz -> diag(1/2, -1/2),  S+ -> [[0, 1], [0, 0]],  S- -> [[0, 0], [-1, 0]],
// which reproduces [Sz, S+-] = +-S+- and [S+, S-] = -2 Sz. The representation
// is faithful on the algebra, so any x Sz + y S+ + z S- can be manipulated as
// a 2x2 matrix and mapped back exactly.
//
// A group element g = [[a, b], [c, d]] (det g = 1, d != 0) factorises as
//   g = exp(A S+) d^{-2 Sz} exp(C S-),   A = b / d,  C = -c / d.
// In the Fock basis exp(A S+) is lower triangular and exp(C S-) upper
// triangular, so every entry of the truncated product is exact: the sum over
// intermediate states never leaves the retained block. The half-integer power
// d^{-(n+1/2)} needs a square root of d; its sign is the metaplectic sign and
// is supplied by the caller (by continuity along a path from the identity).

#include <Eigen/Dense>

#include "ptgauge/fock_algebra.hpp"

namespace ptgauge {

using Mat2 = Eigen::Matrix2cd;

/// x Sz + y S+ + z S-.
struct AlgebraElement {
  Complex sz{0.0};
  Complex splus{0.0};
  Complex sminus{0.0};
};

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator*(Complex s, const AlgebraElement& a);

Mat2 to_defining(const AlgebraElement& a);

/// Inverse of to_defining on traceless matrices. The trace part (which is not
/// in the algebra) is dropped; see trace_defect().
AlgebraElement from_defining(const Mat2& m);
double trace_defect(const Mat2& m);

/// Banded Fock matrix of x Sz + y S+ + z S-.
OperatorMatrix to_fock(const AlgebraElement& a, const FockSpace& space);

/// exp(c (e^{i phi} S+ + e^{-i phi} S-)) = cos c I + sin c K in the defining
/// representation, where K is the image of the exponent direction.
Mat2 hyperbolic_exp(double c, double phi);
/// d/dphi of hyperbolic_exp(c, phi).
Mat2 hyperbolic_exp_dphi(double c, double phi);

/// Normal-ordered factors exp(A S+) d^{-2Sz} exp(C S-).
struct NormalOrdered {
  Complex raise;   // A
  Complex lower;   // C
  Complex sqrt_d;  // chosen square root of d
};

/// Throws ExponentialDidNotConverge when d vanishes (no normal-ordered form).
NormalOrdered normal_order(const Mat2& g, Complex sqrt_d);

/// Normal-ordered form of hyperbolic_exp(c, phi); requires cos c > 0.
NormalOrdered hyperbolic_normal_order(double c, double phi);

/// Full truncated Fock matrix of the lifted group element. Entries are exact;
/// throws ExponentialDidNotConverge if any entry overflows.
CMatrix lift(const NormalOrdered& g, int cutoff);

/// Column n of the lifted element (i.e. lift(g) e_n), exact.
CVector lift_column(const NormalOrdered& g, int n, int cutoff);

/// Diagonal entry (n, n) of the lifted element, exact (finite sum).
Complex lift_diagonal(const NormalOrdered& g, int n);

/// lift(g) v with the upper factor's sum truncated at the cutoff.
CVector lift_apply(const NormalOrdered& g, const CVector& v);

/// Square root of d continued from `previous` (the root closest to it).
Complex continue_sqrt(Complex d, Complex previous);

}  // namespace ptgauge
