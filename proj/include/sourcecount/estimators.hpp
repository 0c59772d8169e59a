#pragma once

#include <span>
#include <vector>

#include "sourcecount/hermitian.hpp"
#include "sourcecount/model.hpp"
#include "sourcecount/types.hpp"

namespace sourcecount {

struct CriterionRow {
  double neg_log_likelihood = 0.0;
  double penalty = 0.0;
  double total = 0.0;
};

/// Per-candidate criterion values for q = 0..p-1 and the chosen order.
struct CriterionTable {
  std::vector<CriterionRow> rows;
  int q_hat = 0;
};

/// Index of the smallest total; ties go to the smaller q.
int argmin_total(std::span<const CriterionRow> rows);

// ---------------------------------------------------------------------------
// Classical eigenvalue-based MDL (white-noise model)
// ---------------------------------------------------------------------------

/// -N log( prod_{i>q} l_i / (mean_{i>q} l_i)^(p-q) ), always >= 0.
/// `eigs` must be sorted descending and strictly positive.
double gmdl_likelihood_term(std::span<const double> eigs, long n, int q);

/// Free-parameter count q(2p-q)+1, weighted by log(N)/2 for MDL or 1 for AIC.
double gmdl_penalty(int p, long n, int q, Penalty penalty = Penalty::Mdl);

/// Likelihood term + penalty. Throws NumericalError on nonpositive
/// eigenvalues, ConfigError on q outside [0, p) or N < 2.
double gmdl_criterion(std::span<const double> eigs, long n, int q,
                      Penalty penalty = Penalty::Mdl);

CriterionTable gmdl_estimate(std::span<const double> eigs, long n,
                             Penalty penalty = Penalty::Mdl);

// ---------------------------------------------------------------------------
// Robust MDL: low-rank + sigma2 I + diag(w), fitted by alternating LS
// ---------------------------------------------------------------------------

struct RmdlFit {
  int q = 0;
  /// Fitted signal part A R_s A^H (PSD, rank <= q).
  HermitianMatrix lowrank;
  double sigma2 = 0.0;
  /// Per-sensor noise deviation, sums to zero.
  RVector w;
  /// ||R - (lowrank + sigma2 I + diag(w))||_F^2 at the final iterate.
  double ls_error = 0.0;
  /// ls_error after each iteration; non-increasing.
  std::vector<double> error_trace;
  /// sum(w) after each iteration; zero up to rounding.
  std::vector<double> w_sum_trace;
  int iterations = 0;
  bool converged = false;
  /// Sensors whose unit vector lies (numerically) in the fitted signal
  /// subspace; such a fit is equivalent to one with fewer sources.
  std::vector<int> unidentifiable_sensors;

  /// lowrank + sigma2 I + diag(w)
  CMatrix model() const;
};

/// Alternating LS fit starting from w = 0:
///   E <- R - diag(w); lowrank <- truncated spectrum of E;
///   d <- diag(R - lowrank); sigma2 <- max(mean(d), floor); w <- d - mean(d)
/// until the relative decrease of ls_error drops below cfg.tol_rel or
/// cfg.max_iter iterations have run (converged = false in that case).
RmdlFit rmdl_fit(const HermitianMatrix &r, int q, const EstimatorConfig &cfg = {});

/// N (log det(model) + trace(model^-1 R)). Throws NumericalError if `model`
/// is not positive definite.
double gaussian_neg_log_likelihood(const HermitianMatrix &r, const CMatrix &model,
                                   long n);

/// Running minimum over q, so the negative log-likelihood never increases
/// with model order (the q-source fit is admissible for q+1 sources).
std::vector<double> enforce_nested_monotonicity(std::span<const double> nll);

/// Free-parameter count q(2p-q)+p, weighted as in gmdl_penalty.
double rmdl_penalty(int p, long n, int q, Penalty penalty = Penalty::Mdl);

struct RmdlEstimate {
  CriterionTable table;
  std::vector<RmdlFit> fits;
};

RmdlEstimate rmdl_estimate(const HermitianMatrix &r, long n,
                           const EstimatorConfig &cfg = {});

/// 0-based sensors j with ||P e_j|| >= 1 - tol, P the projector onto the
/// column space of `basis` (orthonormalized internally).
std::vector<int> identifiability_flag(const CMatrix &basis, double tol);

/// Same test on the column space of fit.lowrank.
std::vector<int> identifiability_flag(const RmdlFit &fit, double tol);

} // namespace sourcecount
