#include "sourcecount/spectra.hpp"

#include <algorithm>
#include <span>

#include <Eigen/Eigenvalues>

#include "sourcecount/errors.hpp"
#include "sourcecount/kernels.hpp"

namespace sourcecount {

HermitianMatrix sample_covariance(const SnapshotBlock &block) {
  const int p = block.sensors();
  const int n = block.n_snapshots();
  if (n < 1) {
    throw ConfigError("sample covariance needs at least one snapshot");
  }
  const auto len = static_cast<std::size_t>(n);
  CMatrix r(p, p);
  for (int i = 0; i < p; ++i) {
    std::span<const cdouble> xi(block.data.row(i).data(), len);
    r(i, i) = kernels::sum_abs2(xi) / n;
    for (int j = i + 1; j < p; ++j) {
      std::span<const cdouble> xj(block.data.row(j).data(), len);
      const cdouble v = kernels::dot_conj(xi, xj) / static_cast<double>(n);
      r(i, j) = v;
      r(j, i) = std::conj(v);
    }
  }
  return HermitianMatrix::from_trusted(r);
}

EigenSystem eig_hermitian(const HermitianMatrix &m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m.matrix());
  if (solver.info() != Eigen::Success) {
    throw NumericalError("Hermitian eigendecomposition did not converge");
  }
  // Eigen returns ascending order; reverse. Equal values keep solver order.
  const int p = m.dim();
  EigenSystem out{RVector(p), CMatrix(p, p)};
  for (int i = 0; i < p; ++i) {
    out.values[i] = solver.eigenvalues()[p - 1 - i];
    out.vectors.col(i) = solver.eigenvectors().col(p - 1 - i);
  }
  return out;
}

SpikedApproximation project_truncated_spectrum(const EigenSystem &eig, int q, double floor) {
  const int p = eig.dim();
  if (q < 0 || q >= p) {
    throw ConfigError("q must satisfy 0 <= q < p");
  }
  const double sigma2 = std::max(eig.values.tail(p - q).mean(), floor);
  CMatrix lowrank = CMatrix::Zero(p, p);
  for (int i = 0; i < q; ++i) {
    const double gain = std::max(eig.values[i] - sigma2, 0.0);
    if (gain > 0.0) {
      lowrank.noalias() += gain * eig.vectors.col(i) * eig.vectors.col(i).adjoint();
    }
  }
  return {HermitianMatrix::from_trusted(lowrank), sigma2};
}

SpikedApproximation project_truncated_spectrum(const HermitianMatrix &m, int q, double floor) {
  return project_truncated_spectrum(eig_hermitian(m), q, floor);
}

} // namespace sourcecount
