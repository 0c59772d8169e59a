#pragma once

#include "sourcecount/hermitian.hpp"
#include "sourcecount/signal_gen.hpp"
#include "sourcecount/types.hpp"

namespace sourcecount {

/// Eigenpairs of a Hermitian matrix, values sorted descending. Column i of
/// `vectors` pairs with values[i].
struct EigenSystem {
  RVector values;
  CMatrix vectors;

  int dim() const { return static_cast<int>(values.size()); }
};

/// (1/N) sum_t x(t) x(t)^H
HermitianMatrix sample_covariance(const SnapshotBlock &block);

/// Throws NumericalError if the solver does not converge.
EigenSystem eig_hermitian(const HermitianMatrix &m);

/// Frobenius-nearest "rank-q PSD + scaled identity" to a Hermitian matrix.
struct SpikedApproximation {
  HermitianMatrix lowrank;
  double sigma2 = 0.0;
};

/// sigma2 = max(mean of the p-q trailing eigenvalues, floor);
/// lowrank = sum_{i<q} max(l_i - sigma2, 0) v_i v_i^H.
SpikedApproximation project_truncated_spectrum(const HermitianMatrix &m, int q,
                                               double floor);
SpikedApproximation project_truncated_spectrum(const EigenSystem &eig, int q,
                                               double floor);

} // namespace sourcecount
