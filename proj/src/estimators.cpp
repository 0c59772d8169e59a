#include "sourcecount/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "sourcecount/errors.hpp"
#include "sourcecount/spectra.hpp"

namespace sourcecount {

namespace {

double penalty_weight(long n, Penalty penalty) {
  return penalty == Penalty::Mdl ? 0.5 * std::log(static_cast<double>(n)) : 1.0;
}

void check_order(int p, int q) {
  if (q < 0 || q >= p) {
    throw ConfigError("candidate order q must satisfy 0 <= q < p");
  }
}

// Fits whose residual is below this fraction of ||R||_F^2 are exact.
constexpr double kExactFit = 1e-28;

} // namespace

int argmin_total(std::span<const CriterionRow> rows) {
  int best = 0;
  for (int q = 1; q < static_cast<int>(rows.size()); ++q) {
    if (rows[q].total < rows[best].total) {
      best = q;
    }
  }
  return best;
}

double gmdl_likelihood_term(std::span<const double> eigs, long n, int q) {
  const int p = static_cast<int>(eigs.size());
  check_order(p, q);
  if (n < 2) {
    throw ConfigError("GMDL needs N >= 2");
  }
  double sum = 0.0;
  double log_sum = 0.0;
  for (int i = q; i < p; ++i) {
    if (!(eigs[i] > 0.0)) {
      throw NumericalError("GMDL needs strictly positive eigenvalues");
    }
    sum += eigs[i];
    log_sum += std::log(eigs[i]);
  }
  const int m = p - q;
  const double log_ratio = log_sum - m * std::log(sum / m);
  // AM >= GM; anything above zero is rounding.
  return std::max(0.0, -static_cast<double>(n) * log_ratio);
}

double gmdl_penalty(int p, long n, int q, Penalty penalty) {
  const double params = q * (2.0 * p - q) + 1.0;
  return params * penalty_weight(n, penalty);
}

double gmdl_criterion(std::span<const double> eigs, long n, int q, Penalty penalty) {
  const int p = static_cast<int>(eigs.size());
  return gmdl_likelihood_term(eigs, n, q) + gmdl_penalty(p, n, q, penalty);
}

CriterionTable gmdl_estimate(std::span<const double> eigs, long n, Penalty penalty) {
  const int p = static_cast<int>(eigs.size());
  CriterionTable table;
  table.rows.reserve(p);
  for (int q = 0; q < p; ++q) {
    CriterionRow row;
    row.neg_log_likelihood = gmdl_likelihood_term(eigs, n, q);
    row.penalty = gmdl_penalty(p, n, q, penalty);
    row.total = row.neg_log_likelihood + row.penalty;
    table.rows.push_back(row);
  }
  table.q_hat = argmin_total(table.rows);
  return table;
}

CMatrix RmdlFit::model() const {
  CMatrix m = lowrank.matrix();
  for (int i = 0; i < m.rows(); ++i) {
    m(i, i) += sigma2 + w[i];
  }
  return m;
}

RmdlFit rmdl_fit(const HermitianMatrix &r, int q, const EstimatorConfig &cfg) {
  validate_estimator(cfg);
  const int p = r.dim();
  check_order(p, q);

  const double trace = r.trace();
  const double floor = trace > 0.0 ? cfg.eig_floor * trace / p : cfg.eig_floor;
  const double norm2 = r.matrix().squaredNorm();
  const RVector r_diag = r.matrix().diagonal().real();

  RmdlFit fit;
  fit.q = q;
  fit.w = RVector::Zero(p);

  CMatrix e = r.matrix();
  for (int iter = 1; iter <= cfg.max_iter; ++iter) {
    for (int i = 0; i < p; ++i) {
      e(i, i) = r(i, i) - fit.w[i];
    }
    SpikedApproximation spiked = project_truncated_spectrum(HermitianMatrix::from_trusted(e), q, floor);
    fit.lowrank = std::move(spiked.lowrank);

    // Per-sensor noise d = diag(R - lowrank), split as sigma2 + w with
    // zero-sum w. Without the floor this equals the projection's sigma2
    // and leaves a zero diagonal residual.
    const RVector d = r_diag - fit.lowrank.matrix().diagonal().real();
    const double mean_d = d.mean();
    fit.sigma2 = std::max(mean_d, floor);
    fit.w = d.array() - mean_d;

    CMatrix resid = r.matrix() - fit.lowrank.matrix();
    resid.diagonal().setConstant(mean_d - fit.sigma2);
    const double err = resid.squaredNorm();

    fit.error_trace.push_back(err);
    fit.w_sum_trace.push_back(fit.w.sum());
    fit.iterations = iter;
    fit.ls_error = err;

    if (err <= kExactFit * norm2) {
      fit.converged = true;
      break;
    }
    if (iter > 1) {
      const double prev = fit.error_trace[fit.error_trace.size() - 2];
      if (prev - err <= cfg.tol_rel * prev) {
        fit.converged = true;
        break;
      }
    }
  }

  fit.unidentifiable_sensors = identifiability_flag(fit, 1e-6);
  return fit;
}

double gaussian_neg_log_likelihood(const HermitianMatrix &r, const CMatrix &model, long n) {
  if (model.rows() != r.dim() || model.cols() != r.dim()) {
    throw ConfigError("model and sample covariance dimensions differ");
  }
  const CMatrix sym = 0.5 * (model + model.adjoint());
  Eigen::LLT<CMatrix> llt(sym);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("model covariance is not positive definite");
  }
  const auto l_diag = llt.matrixLLT().diagonal().real();
  double log_det = 0.0;
  for (Eigen::Index i = 0; i < l_diag.size(); ++i) {
    if (!(l_diag[i] > 0.0)) {
      throw NumericalError("model covariance is singular");
    }
    log_det += 2.0 * std::log(l_diag[i]);
  }
  const double trace_term = llt.solve(r.matrix()).trace().real();
  return static_cast<double>(n) * (log_det + trace_term);
}

std::vector<double> enforce_nested_monotonicity(std::span<const double> nll) {
  std::vector<double> out(nll.begin(), nll.end());
  for (std::size_t q = 1; q < out.size(); ++q) {
    out[q] = std::min(out[q - 1], out[q]);
  }
  return out;
}

double rmdl_penalty(int p, long n, int q, Penalty penalty) {
  const double params = q * (2.0 * p - q) + static_cast<double>(p);
  return params * penalty_weight(n, penalty);
}

RmdlEstimate rmdl_estimate(const HermitianMatrix &r, long n, const EstimatorConfig &cfg) {
  if (n < 2) {
    throw ConfigError("RMDL needs N >= 2");
  }
  const int p = r.dim();
  RmdlEstimate out;
  out.fits.reserve(p);
  std::vector<double> nll(p);
  for (int q = 0; q < p; ++q) {
    out.fits.push_back(rmdl_fit(r, q, cfg));
    try {
      nll[q] = gaussian_neg_log_likelihood(r, out.fits.back().model(), n);
    } catch (const NumericalError &) {
      // An indefinite LS fit has no likelihood; the running minimum below
      // substitutes the best lower-order value.
      nll[q] = std::numeric_limits<double>::infinity();
    }
  }
  const std::vector<double> nested = enforce_nested_monotonicity(nll);
  if (!std::isfinite(nested.front())) {
    throw NumericalError("noise-only model has no finite likelihood");
  }
  out.table.rows.reserve(p);
  for (int q = 0; q < p; ++q) {
    CriterionRow row;
    row.neg_log_likelihood = nested[q];
    row.penalty = rmdl_penalty(p, n, q, cfg.penalty);
    row.total = row.neg_log_likelihood + row.penalty;
    out.table.rows.push_back(row);
  }
  out.table.q_hat = argmin_total(out.table.rows);
  return out;
}

std::vector<int> identifiability_flag(const CMatrix &basis, double tol) {
  std::vector<int> flagged;
  if (basis.cols() == 0) {
    return flagged;
  }
  Eigen::JacobiSVD<CMatrix> svd(basis, Eigen::ComputeThinU);
  const RVector &s = svd.singularValues();
  if (s.size() == 0 || !(s[0] > 0.0)) {
    return flagged;
  }
  int rank = 0;
  while (rank < s.size() && s[rank] > 1e-10 * s[0]) {
    ++rank;
  }
  const CMatrix u = svd.matrixU().leftCols(rank);
  for (int j = 0; j < u.rows(); ++j) {
    // ||P e_j|| = ||U^H e_j|| = norm of row j of U.
    if (u.row(j).norm() >= 1.0 - tol) {
      flagged.push_back(j);
    }
  }
  return flagged;
}

std::vector<int> identifiability_flag(const RmdlFit &fit, double tol) {
  if (fit.q == 0 || fit.lowrank.dim() == 0) {
    return {};
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(fit.lowrank.matrix());
  const RVector &vals = solver.eigenvalues();
  const double top = vals.size() ? vals[vals.size() - 1] : 0.0;
  if (!(top > 0.0)) {
    return {};
  }
  CMatrix basis(fit.lowrank.dim(), 0);
  for (Eigen::Index i = vals.size() - 1; i >= 0 && vals[i] > 1e-10 * top; --i) {
    basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
    basis.col(basis.cols() - 1) = solver.eigenvectors().col(i);
  }
  return identifiability_flag(basis, tol);
}

} // namespace sourcecount
