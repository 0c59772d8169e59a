#pragma once

#include "sourcecount/types.hpp"

namespace sourcecount {

/// Dense complex matrix with M(i,j) == conj(M(j,i)) exactly.
///
/// The checked constructor accepts inputs that are Hermitian to within
/// `tol` (absolute, entrywise) and stores the exact Hermitian part
/// (M + M^H) / 2 so that downstream eigen-solvers see a symmetric input.
class HermitianMatrix {
public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const CMatrix &m, double tol = 1e-12);

  /// Symmetrizes without checking; for matrices Hermitian by construction.
  static HermitianMatrix from_trusted(const CMatrix &m);

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMatrix &matrix() const { return m_; }
  cdouble operator()(int i, int j) const { return m_(i, j); }

  double trace() const { return m_.diagonal().real().sum(); }
  double frobenius_norm() const { return m_.norm(); }

private:
  CMatrix m_;
};

} // namespace sourcecount
