#pragma once

#include <vector>

#include "sourcecount/hermitian.hpp"
#include "sourcecount/types.hpp"

namespace sourcecount {

enum class SourceDistribution { Gaussian, Laplacian };
enum class Penalty { Mdl, Aic };

struct SourceSpec {
  double doa_deg = 0.0;
  /// Linear power relative to unit nominal noise.
  double power = 1.0;
};

/// Per-sensor noise power is sigma2 + w[i]; w is a zero-sum deviation vector.
struct NoiseProfile {
  double sigma2 = 1.0;
  std::vector<double> w;
};

struct ScenarioConfig {
  int p = 0;
  std::vector<SourceSpec> sources;
  NoiseProfile noise;
  SourceDistribution distribution = SourceDistribution::Gaussian;

  int num_sources() const { return static_cast<int>(sources.size()); }
};

struct EstimatorConfig {
  Penalty penalty = Penalty::Mdl;
  int max_iter = 200;
  /// Stop once the relative decrease of the LS error falls below this.
  double tol_rel = 1e-10;
  /// Noise-power floor as a fraction of trace(R)/p.
  double eig_floor = 1e-12;
};

/// Returns cfg unchanged; throws ConfigError naming the first violated invariant.
ScenarioConfig validate_scenario(const ScenarioConfig &cfg);

/// Throws ConfigError on max_iter < 1, tol_rel <= 0 or eig_floor <= 0.
EstimatorConfig validate_estimator(const EstimatorConfig &cfg);

/// R_x = A diag(powers) A^H + sigma2 I + diag(w) for a half-wavelength ULA.
/// The returned matrix is exactly Hermitian.
HermitianMatrix build_true_covariance(const ScenarioConfig &cfg);

/// sigma2 * 10^(snr_db/10)
double power_from_snr_db(double snr_db, double sigma2);

} // namespace sourcecount
