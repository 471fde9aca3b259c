#pragma once

// Truncated single-mode Fock space and the boson / su(1,1) operators on it.
//
// Basis states are |0>, ..., |N-1>. Operators that move population upward
// (a^dagger, S+) lose their image of the top states, so identities that hold
// in infinite dimensions only hold away from the truncation boundary. The
// boundary margin records how many top states callers exclude when asserting
// exactness.

#include <complex>

#include <Eigen/Dense>

namespace ptgauge {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

class FockSpace {
 public:
  /// Throws InvalidArgument unless cutoff >= 4 and boundary_margin < cutoff / 2.
  explicit FockSpace(int cutoff, int boundary_margin = 0);

  int cutoff() const noexcept { return cutoff_; }
  int boundary_margin() const noexcept { return margin_; }
  /// Number of leading basis states unaffected by the truncation boundary.
  int interior() const noexcept { return cutoff_ - margin_; }

  friend bool operator==(const FockSpace&, const FockSpace&) = default;

 private:
  int cutoff_;
  int margin_;
};

/// Dense complex matrix tied to the space it acts on.
class OperatorMatrix {
 public:
  /// Throws DimensionMismatch for a non-square or wrongly sized matrix and
  /// InvalidArgument for non-finite entries.
  OperatorMatrix(FockSpace space, CMatrix entries);

  static OperatorMatrix zero(const FockSpace& space);
  static OperatorMatrix identity(const FockSpace& space);

  const FockSpace& space() const noexcept { return space_; }
  const CMatrix& entries() const noexcept { return entries_; }
  int dim() const noexcept { return space_.cutoff(); }
  Complex operator()(int row, int col) const { return entries_(row, col); }

  /// Top-left block of size space().interior().
  CMatrix interior_block() const;
  OperatorMatrix adjoint() const;

  OperatorMatrix& operator+=(const OperatorMatrix& rhs);
  OperatorMatrix& operator-=(const OperatorMatrix& rhs);
  OperatorMatrix& operator*=(Complex s);

 private:
  FockSpace space_;
  CMatrix entries_;
};

OperatorMatrix operator+(OperatorMatrix lhs, const OperatorMatrix& rhs);
OperatorMatrix operator-(OperatorMatrix lhs, const OperatorMatrix& rhs);
OperatorMatrix operator*(const OperatorMatrix& lhs, const OperatorMatrix& rhs);
OperatorMatrix operator*(Complex s, OperatorMatrix op);

struct LadderOperators {
  OperatorMatrix annihilation;
  OperatorMatrix creation;
};

struct Su11Generators {
  OperatorMatrix sz;
  OperatorMatrix splus;
  OperatorMatrix sminus;
};

/// a has sqrt(n+1) at (n, n+1); a^dagger is its conjugate transpose.
LadderOperators build_ladder(const FockSpace& space);

/// Sz = (a^dagger a + 1/2) / 2, S+ = (a^dagger)^2 / 2, S- = a^2 / 2.
Su11Generators build_su11(const FockSpace& space);

/// AB - BA. Throws DimensionMismatch when the spaces differ.
OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);

/// diag((-1)^n): implements a -> -a, leaves the su(1,1) generators invariant.
OperatorMatrix parity_operator(const FockSpace& space);

/// Largest entrywise modulus over the interior block of a - b.
double interior_residual(const OperatorMatrix& a, const OperatorMatrix& b);

double max_abs(const Eigen::Ref<const CMatrix>& m);

}  // namespace ptgauge
