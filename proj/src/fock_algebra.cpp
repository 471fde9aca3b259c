#include "ptgauge/fock_algebra.hpp"

#include <cmath>
#include <string>

#include "ptgauge/errors.hpp"

namespace ptgauge {

FockSpace::FockSpace(int cutoff, int boundary_margin)
    : cutoff_(cutoff), margin_(boundary_margin) {
  if (cutoff < 4) {
    throw InvalidArgument("Fock cutoff must be at least 4, got " +
                          std::to_string(cutoff));
  }
  if (boundary_margin < 0 || 2 * boundary_margin >= cutoff) {
    throw InvalidArgument("boundary margin " + std::to_string(boundary_margin) +
                          " must lie in [0, cutoff/2) for cutoff " +
                          std::to_string(cutoff));
  }
}

OperatorMatrix::OperatorMatrix(FockSpace space, CMatrix entries)
    : space_(space), entries_(std::move(entries)) {
  if (entries_.rows() != space_.cutoff() || entries_.cols() != space_.cutoff()) {
    throw DimensionMismatch("operator matrix is " +
                            std::to_string(entries_.rows()) + "x" +
                            std::to_string(entries_.cols()) +
                            " but the space has cutoff " +
                            std::to_string(space_.cutoff()));
  }
  if (!entries_.allFinite()) {
    throw InvalidArgument("operator matrix has non-finite entries");
  }
}

OperatorMatrix OperatorMatrix::zero(const FockSpace& space) {
  return {space, CMatrix::Zero(space.cutoff(), space.cutoff())};
}

OperatorMatrix OperatorMatrix::identity(const FockSpace& space) {
  return {space, CMatrix::Identity(space.cutoff(), space.cutoff())};
}

CMatrix OperatorMatrix::interior_block() const {
  const int m = space_.interior();
  return entries_.topLeftCorner(m, m);
}

OperatorMatrix OperatorMatrix::adjoint() const {
  return {space_, entries_.adjoint()};
}

namespace {
void require_same_space(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (!(a.space() == b.space())) {
    throw DimensionMismatch("operators act on different Fock spaces (cutoff " +
                            std::to_string(a.space().cutoff()) + " vs " +
                            std::to_string(b.space().cutoff()) + ")");
  }
}
}  // namespace

OperatorMatrix& OperatorMatrix::operator+=(const OperatorMatrix& rhs) {
  require_same_space(*this, rhs);
  entries_ += rhs.entries_;
  return *this;
}

OperatorMatrix& OperatorMatrix::operator-=(const OperatorMatrix& rhs) {
  require_same_space(*this, rhs);
  entries_ -= rhs.entries_;
  return *this;
}

OperatorMatrix& OperatorMatrix::operator*=(Complex s) {
  entries_ *= s;
  return *this;
}

OperatorMatrix operator+(OperatorMatrix lhs, const OperatorMatrix& rhs) {
  return lhs += rhs;
}

OperatorMatrix operator-(OperatorMatrix lhs, const OperatorMatrix& rhs) {
  return lhs -= rhs;
}

OperatorMatrix operator*(const OperatorMatrix& lhs, const OperatorMatrix& rhs) {
  require_same_space(lhs, rhs);
  return {lhs.space(), lhs.entries() * rhs.entries()};
}

OperatorMatrix operator*(Complex s, OperatorMatrix op) { return op *= s; }

LadderOperators build_ladder(const FockSpace& space) {
  const int n = space.cutoff();
  CMatrix a = CMatrix::Zero(n, n);
  for (int k = 0; k + 1 < n; ++k) a(k, k + 1) = std::sqrt(double(k + 1));
  CMatrix ad = a.adjoint();
  return {OperatorMatrix(space, std::move(a)), OperatorMatrix(space, std::move(ad))};
}

// Matrix elements are written directly rather than as products of truncated
// ladder matrices; (a^dagger)^2 computed by multiplication would be identical
// anyway, but a^dagger a would lose the top diagonal entry.
Su11Generators build_su11(const FockSpace& space) {
  const int n = space.cutoff();
  CMatrix sz = CMatrix::Zero(n, n);
  CMatrix sp = CMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    sz(k, k) = 0.5 * (k + 0.5);
    if (k + 2 < n) sp(k + 2, k) = 0.5 * std::sqrt(double(k + 1) * (k + 2));
  }
  CMatrix sm = sp.adjoint();
  return {OperatorMatrix(space, std::move(sz)), OperatorMatrix(space, std::move(sp)),
          OperatorMatrix(space, std::move(sm))};
}

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_space(a, b);
  return {a.space(), a.entries() * b.entries() - b.entries() * a.entries()};
}

OperatorMatrix parity_operator(const FockSpace& space) {
  const int n = space.cutoff();
  CMatrix p = CMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) p(k, k) = (k % 2 == 0) ? 1.0 : -1.0;
  return {space, std::move(p)};
}

double max_abs(const Eigen::Ref<const CMatrix>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double interior_residual(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_space(a, b);
  const int m = a.space().interior();
  return max_abs(a.entries().topLeftCorner(m, m) - b.entries().topLeftCorner(m, m));
}

}  // namespace ptgauge
