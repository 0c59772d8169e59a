#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "sourcecount/model.hpp"
#include "sourcecount/rng.hpp"

namespace sourcecount {

struct TrialOutcome {
  std::uint64_t trial_id = 0;
  long n = 0;
  int q_true = 0;
  int q_gmdl = 0;
  int q_rmdl = 0;
  int rmdl_iterations_total = 0;
};

/// Simulate N snapshots, form the sample covariance, run both estimators.
TrialOutcome run_trial(const ScenarioConfig &cfg, long n,
                       const EstimatorConfig &est, RngStream &rng);

enum class SweepAxis { Snapshots, Separation };

struct SweepPoint {
  double axis_value = 0.0;
  double pcd_gmdl = 0.0;
  /// Binomial 95% half-width (normal approximation).
  double pcd_gmdl_ci = 0.0;
  double pcd_rmdl = 0.0;
  double pcd_rmdl_ci = 0.0;
  int trials = 0;
};

struct SweepResult {
  SweepAxis axis = SweepAxis::Snapshots;
  std::vector<SweepPoint> points;
};

struct SweepOptions {
  int trials = 200;
  std::uint64_t seed = 1;
  /// 0 = hardware concurrency, capped by SOURCECOUNT_THREADS if set.
  int threads = 0;
};

/// Probability of correct decision per N. Trial t of point k uses
/// RngStream(seed, trial_stream(k, t)), so results are schedule-independent.
SweepResult sweep_snapshots(const ScenarioConfig &cfg, const std::vector<long> &n_list,
                            const EstimatorConfig &est, const SweepOptions &opt);

/// Same, with DOAs set to [0, rho, 2 rho, ...] for each rho (degrees).
SweepResult sweep_separation(const ScenarioConfig &cfg_template,
                             const std::vector<double> &rho_list_deg, long n,
                             const EstimatorConfig &est, const SweepOptions &opt);

/// 1.96 sqrt(p(1-p)/trials)
double binomial_half_width(double pcd, int trials);

/// 3-point running median with the end points kept as-is.
std::vector<double> median3(const std::vector<double> &values);

/// Header "axis_value,pcd_gmdl,pcd_gmdl_ci,pcd_rmdl,pcd_rmdl_ci,trials".
void write_sweep_csv(std::ostream &out, const SweepResult &result);

/// Worker count: SOURCECOUNT_THREADS if set and positive, else hardware.
int default_thread_count();

} // namespace sourcecount
