#include "sourcecount/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <thread>

#include "sourcecount/errors.hpp"
#include "sourcecount/estimators.hpp"
#include "sourcecount/presets.hpp"
#include "sourcecount/signal_gen.hpp"
#include "sourcecount/spectra.hpp"

namespace sourcecount {

TrialOutcome run_trial(const ScenarioConfig &cfg, long n, const EstimatorConfig &est,
                       RngStream &rng) {
  const SnapshotBlock block = generate_snapshots(cfg, static_cast<int>(n), rng);
  const HermitianMatrix r = sample_covariance(block);
  const EigenSystem eig = eig_hermitian(r);

  TrialOutcome out;
  out.trial_id = rng.stream_id();
  out.n = n;
  out.q_true = cfg.num_sources();
  out.q_gmdl = gmdl_estimate({eig.values.data(), static_cast<std::size_t>(eig.dim())}, n,
                             est.penalty)
                   .q_hat;
  const RmdlEstimate rmdl = rmdl_estimate(r, n, est);
  out.q_rmdl = rmdl.table.q_hat;
  for (const auto &fit : rmdl.fits) {
    out.rmdl_iterations_total += fit.iterations;
  }
  return out;
}

int default_thread_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) {
    hw = 1;
  }
  if (const char *env = std::getenv("SOURCECOUNT_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) {
      return cap;
    }
  }
  return hw;
}

double binomial_half_width(double pcd, int trials) {
  if (trials <= 0) {
    return 0.0;
  }
  return 1.96 * std::sqrt(pcd * (1.0 - pcd) / trials);
}

std::vector<double> median3(const std::vector<double> &values) {
  std::vector<double> out = values;
  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    double a = values[i - 1], b = values[i], c = values[i + 1];
    out[i] = std::max(std::min(a, b), std::min(std::max(a, b), c));
  }
  return out;
}

namespace {

// Runs trials for every (point, trial) pair on a worker pool. Each slot
// owns its RNG stream and result cell, so the outcome does not depend on
// scheduling.
SweepResult run_sweep(SweepAxis axis, const std::vector<double> &axis_values,
                      const std::vector<ScenarioConfig> &scenarios, const std::vector<long> &ns,
                      const EstimatorConfig &est, const SweepOptions &opt) {
  if (opt.trials < 1) {
    throw ConfigError("trials must be at least 1");
  }
  validate_estimator(est);
  for (const auto &cfg : scenarios) {
    validate_scenario(cfg);
  }
  const std::size_t points = axis_values.size();
  const std::size_t trials = static_cast<std::size_t>(opt.trials);
  const std::size_t total = points * trials;

  std::vector<TrialOutcome> outcomes(total);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t job = next.fetch_add(1);
      if (job >= total) {
        return;
      }
      const std::size_t point = job / trials;
      const std::size_t trial = job % trials;
      try {
        RngStream rng(opt.seed, RngStream::trial_stream(point, trial));
        outcomes[job] = run_trial(scenarios[point], ns[point], est, rng);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) {
          failure = std::current_exception();
        }
        next.store(total);
        return;
      }
    }
  };

  int threads = opt.threads > 0 ? opt.threads : default_thread_count();
  threads = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(threads), total));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) {
    pool.emplace_back(worker);
  }
  worker();
  for (auto &th : pool) {
    th.join();
  }
  if (failure) {
    std::rethrow_exception(failure);
  }

  SweepResult result;
  result.axis = axis;
  for (std::size_t k = 0; k < points; ++k) {
    int ok_gmdl = 0;
    int ok_rmdl = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      const auto &o = outcomes[k * trials + t];
      ok_gmdl += o.q_gmdl == o.q_true;
      ok_rmdl += o.q_rmdl == o.q_true;
    }
    SweepPoint pt;
    pt.axis_value = axis_values[k];
    pt.trials = opt.trials;
    pt.pcd_gmdl = static_cast<double>(ok_gmdl) / opt.trials;
    pt.pcd_rmdl = static_cast<double>(ok_rmdl) / opt.trials;
    pt.pcd_gmdl_ci = binomial_half_width(pt.pcd_gmdl, opt.trials);
    pt.pcd_rmdl_ci = binomial_half_width(pt.pcd_rmdl, opt.trials);
    result.points.push_back(pt);
  }
  return result;
}

} // namespace

SweepResult sweep_snapshots(const ScenarioConfig &cfg, const std::vector<long> &n_list,
                            const EstimatorConfig &est, const SweepOptions &opt) {
  if (n_list.empty()) {
    throw ConfigError("snapshot list must not be empty");
  }
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 2 || (i > 0 && n_list[i] <= n_list[i - 1])) {
      throw ConfigError("snapshot list must be ascending with N >= 2");
    }
  }
  std::vector<double> axis(n_list.begin(), n_list.end());
  std::vector<ScenarioConfig> scenarios(n_list.size(), cfg);
  return run_sweep(SweepAxis::Snapshots, axis, scenarios, n_list, est, opt);
}

SweepResult sweep_separation(const ScenarioConfig &cfg_template,
                             const std::vector<double> &rho_list_deg, long n,
                             const EstimatorConfig &est, const SweepOptions &opt) {
  if (rho_list_deg.empty()) {
    throw ConfigError("separation list must not be empty");
  }
  if (n < 2) {
    throw ConfigError("N must be at least 2");
  }
  std::vector<ScenarioConfig> scenarios;
  for (std::size_t i = 0; i < rho_list_deg.size(); ++i) {
    if (!(rho_list_deg[i] > 0.0) || (i > 0 && rho_list_deg[i] <= rho_list_deg[i - 1])) {
      throw ConfigError("separation list must be positive and ascending");
    }
    scenarios.push_back(with_separation(cfg_template, rho_list_deg[i]));
  }
  std::vector<long> ns(rho_list_deg.size(), n);
  return run_sweep(SweepAxis::Separation, rho_list_deg, scenarios, ns, est, opt);
}

void write_sweep_csv(std::ostream &out, const SweepResult &result) {
  out << "axis_value,pcd_gmdl,pcd_gmdl_ci,pcd_rmdl,pcd_rmdl_ci,trials\n";
  const auto flags = out.flags();
  const auto prec = out.precision();
  out << std::setprecision(10);
  for (const auto &pt : result.points) {
    out << pt.axis_value << ',' << pt.pcd_gmdl << ',' << pt.pcd_gmdl_ci << ',' << pt.pcd_rmdl << ','
        << pt.pcd_rmdl_ci << ',' << pt.trials << '\n';
  }
  out.flags(flags);
  out.precision(prec);
}

} // namespace sourcecount
