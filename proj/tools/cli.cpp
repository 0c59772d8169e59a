#include "cli.hpp"

#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sourcecount/errors.hpp"
#include "sourcecount/estimators.hpp"
#include "sourcecount/montecarlo.hpp"
#include "sourcecount/presets.hpp"
#include "sourcecount/scenario_io.hpp"
#include "sourcecount/signal_gen.hpp"
#include "sourcecount/snapshot_io.hpp"
#include "sourcecount/spectra.hpp"

namespace sourcecount::cli {

namespace {

struct Options {
  std::string scenario_path;
  std::string preset;
  std::string snapshots_path;
  std::string dump_path;
  std::string out_path;
  std::optional<double> snr_db;
  std::string dist;
  std::string penalty = "mdl";
  std::optional<long> n;
  std::string n_list;
  std::string rho_list;
  int q = -1;
  int trials = 200;
  std::uint64_t seed = 1;
  int max_iter = 200;
  double tol_rel = 1e-10;
};

template <typename T> std::vector<T> parse_list(const std::string &text, const char *what) {
  std::vector<T> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::istringstream is(item);
    T v{};
    if (!(is >> v) || !(is >> std::ws).eof()) {
      throw ConfigError(std::string("malformed ") + what + " entry '" + item + "'");
    }
    values.push_back(v);
  }
  if (values.empty()) {
    throw ConfigError(std::string(what) + " is empty");
  }
  return values;
}

std::optional<SourceDistribution> parse_dist(const std::string &s) {
  if (s.empty()) {
    return std::nullopt;
  }
  if (s == "gaussian") {
    return SourceDistribution::Gaussian;
  }
  if (s == "laplacian") {
    return SourceDistribution::Laplacian;
  }
  throw ConfigError("--dist must be gaussian or laplacian");
}

EstimatorConfig estimator_from(const Options &o) {
  EstimatorConfig est;
  if (o.penalty == "mdl") {
    est.penalty = Penalty::Mdl;
  } else if (o.penalty == "aic") {
    est.penalty = Penalty::Aic;
  } else {
    throw ConfigError("--penalty must be mdl or aic");
  }
  est.max_iter = o.max_iter;
  est.tol_rel = o.tol_rel;
  return validate_estimator(est);
}

// Scenario from --scenario or --preset, with --dist applied on top.
// The preset (if any) is returned alongside for its default grids.
std::pair<ScenarioConfig, std::optional<Preset>> scenario_from(const Options &o) {
  if (o.scenario_path.empty() == o.preset.empty()) {
    throw ConfigError("exactly one of --scenario or --preset is required");
  }
  const auto dist = parse_dist(o.dist);
  if (!o.preset.empty()) {
    auto preset = find_preset(o.preset, o.snr_db.value_or(0.0),
                              dist.value_or(SourceDistribution::Gaussian));
    if (!preset) {
      throw ConfigError("unknown preset '" + o.preset + "' (expected fig1..fig5)");
    }
    return {preset->scenario, preset};
  }
  if (o.snr_db) {
    throw ConfigError("--snr applies only to --preset scenarios");
  }
  ScenarioConfig cfg = load_scenario(o.scenario_path);
  if (dist) {
    cfg.distribution = *dist;
  }
  return {cfg, std::nullopt};
}

void emit(const Options &o, const std::string &text, std::ostream &out) {
  if (o.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out_path, std::ios::binary);
  if (!f || !(f << text)) {
    throw ConfigError("cannot write " + o.out_path);
  }
}

int cmd_eigvals(const Options &o, std::ostream &out) {
  const auto [cfg, preset] = scenario_from(o);
  const EigenSystem eig = eig_hermitian(build_true_covariance(cfg));
  std::ostringstream text;
  text << std::setprecision(4) << std::showpoint;
  for (int i = 0; i < eig.dim(); ++i) {
    text << eig.values[i] << '\n';
  }
  emit(o, text.str(), out);
  return kExitOk;
}

HermitianMatrix covariance_for(const Options &o, long default_n, long &n_used) {
  if (!o.snapshots_path.empty()) {
    const SnapshotBlock block = read_snapshots(o.snapshots_path);
    n_used = block.n_snapshots();
    return sample_covariance(block);
  }
  const auto [cfg, preset] = scenario_from(o);
  n_used = o.n.value_or(default_n);
  if (n_used < 2 || n_used > (1L << 30)) {
    throw ConfigError("--n must be in [2, 2^30]");
  }
  RngStream rng(o.seed, 0);
  const SnapshotBlock block = generate_snapshots(cfg, static_cast<int>(n_used), rng);
  if (!o.dump_path.empty()) {
    write_snapshots(o.dump_path, block);
  }
  return sample_covariance(block);
}

int cmd_fit(const Options &o, std::ostream &out) {
  const EstimatorConfig est = estimator_from(o);
  HermitianMatrix r;
  std::string source;
  if (o.n || !o.snapshots_path.empty()) {
    long n = 0;
    r = covariance_for(o, 0, n);
    source = "sample covariance, N=" + std::to_string(n);
  } else {
    r = build_true_covariance(scenario_from(o).first);
    source = "true covariance";
  }
  if (o.q < 0 || o.q >= r.dim()) {
    throw ConfigError("--q must satisfy 0 <= q < p");
  }
  const RmdlFit fit = rmdl_fit(r, o.q, est);
  std::ostringstream text;
  text << std::setprecision(10);
  text << "input: " << source << '\n';
  text << "q: " << fit.q << '\n';
  text << "sigma2: " << fit.sigma2 << '\n';
  text << "w:";
  for (int i = 0; i < fit.w.size(); ++i) {
    text << (i ? "," : " ") << fit.w[i];
  }
  text << '\n';
  text << "ls_error: " << fit.ls_error << '\n';
  text << "iterations: " << fit.iterations << '\n';
  text << "converged: " << (fit.converged ? "true" : "false") << '\n';
  text << "unidentifiable_sensors:";
  for (int j : fit.unidentifiable_sensors) {
    text << ' ' << j + 1;
  }
  text << '\n';
  emit(o, text.str(), out);
  return kExitOk;
}

int cmd_estimate(const Options &o, std::ostream &out) {
  const EstimatorConfig est = estimator_from(o);
  long n = 0;
  const HermitianMatrix r = covariance_for(o, 10000, n);
  const EigenSystem eig = eig_hermitian(r);
  const CriterionTable gmdl =
      gmdl_estimate({eig.values.data(), static_cast<std::size_t>(eig.dim())}, n, est.penalty);
  const RmdlEstimate rmdl = rmdl_estimate(r, n, est);

  std::ostringstream csv;
  csv << std::setprecision(12);
  csv << "q,gmdl_nll,gmdl_penalty,gmdl_total,rmdl_nll,rmdl_penalty,rmdl_total\n";
  for (std::size_t q = 0; q < gmdl.rows.size(); ++q) {
    const auto &g = gmdl.rows[q];
    const auto &m = rmdl.table.rows[q];
    csv << q << ',' << g.neg_log_likelihood << ',' << g.penalty << ',' << g.total << ','
        << m.neg_log_likelihood << ',' << m.penalty << ',' << m.total << '\n';
  }

  std::ostringstream human;
  human << "N = " << n << ", p = " << r.dim() << '\n';
  human << std::setw(3) << "q" << std::setw(18) << "GMDL" << std::setw(18) << "RMDL" << '\n';
  human << std::fixed << std::setprecision(3);
  for (std::size_t q = 0; q < gmdl.rows.size(); ++q) {
    human << std::setw(3) << q << std::setw(18) << gmdl.rows[q].total << std::setw(18)
          << rmdl.table.rows[q].total << '\n';
  }
  human << "q_hat gmdl=" << gmdl.q_hat << " rmdl=" << rmdl.table.q_hat << '\n';

  if (o.out_path.empty()) {
    out << csv.str();
    out << "q_hat gmdl=" << gmdl.q_hat << " rmdl=" << rmdl.table.q_hat << '\n';
  } else {
    emit(o, csv.str(), out);
    out << human.str();
  }
  return kExitOk;
}

int cmd_sweep(const Options &o, bool separation, std::ostream &out) {
  const EstimatorConfig est = estimator_from(o);
  const auto [cfg, preset] = scenario_from(o);
  SweepOptions opt;
  opt.trials = o.trials;
  opt.seed = o.seed;

  SweepResult result;
  if (separation) {
    std::vector<double> rhos =
        o.rho_list.empty() ? default_rho_grid() : parse_list<double>(o.rho_list, "--rho-list");
    long n = o.n.value_or(preset && preset->separation ? preset->n_list.front() : 15000);
    result = sweep_separation(cfg, rhos, n, est, opt);
  } else {
    std::vector<long> ns =
        o.n_list.empty() ? default_n_grid() : parse_list<long>(o.n_list, "--n-list");
    result = sweep_snapshots(cfg, ns, est, opt);
  }

  std::ostringstream csv;
  write_sweep_csv(csv, result);
  if (o.out_path.empty()) {
    out << csv.str();
  } else {
    emit(o, csv.str(), out);
    out << std::fixed;
    for (const auto &pt : result.points) {
      out << (separation ? "rho=" : "N=") << std::setprecision(separation ? 2 : 0)
          << pt.axis_value << std::setprecision(3) << "  pcd_gmdl=" << pt.pcd_gmdl
          << "  pcd_rmdl=" << pt.pcd_rmdl << "  trials=" << pt.trials << '\n';
    }
  }
  return kExitOk;
}

void add_scenario_flags(CLI::App *cmd, Options &o) {
  cmd->add_option("--scenario", o.scenario_path, "Scenario JSON file");
  cmd->add_option("--preset", o.preset, "Built-in scenario: fig1..fig5");
  cmd->add_option("--snr", o.snr_db, "Per-element SNR in dB (presets only)");
  cmd->add_option("--dist", o.dist, "Source distribution: gaussian|laplacian");
}

void add_estimator_flags(CLI::App *cmd, Options &o) {
  cmd->add_option("--penalty", o.penalty, "mdl|aic")->capture_default_str();
  cmd->add_option("--max-iter", o.max_iter, "LS fit iteration cap")->capture_default_str();
  cmd->add_option("--tol", o.tol_rel, "Relative LS convergence tolerance")->capture_default_str();
  cmd->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Estimate the number of sources impinging on a sensor array"};
  app.require_subcommand(1);
  Options o;

  auto *eig = app.add_subcommand("eigvals", "Eigenvalues of the true covariance");
  add_scenario_flags(eig, o);
  eig->add_option("--out", o.out_path, "Write to file instead of stdout");

  auto *fit = app.add_subcommand("fit", "Alternating LS fit for one candidate order");
  add_scenario_flags(fit, o);
  add_estimator_flags(fit, o);
  fit->add_option("--q", o.q, "Candidate number of sources")->required();
  fit->add_option("--n", o.n, "Fit a sample covariance of N snapshots instead of the true one");
  fit->add_option("--snapshots", o.snapshots_path, "Snapshot file to fit");
  fit->add_option("--out", o.out_path, "Write to file instead of stdout");

  auto *est = app.add_subcommand("estimate", "GMDL and RMDL criterion tables");
  add_scenario_flags(est, o);
  add_estimator_flags(est, o);
  est->add_option("--n", o.n, "Number of snapshots (default 10000)");
  est->add_option("--snapshots", o.snapshots_path, "Use a snapshot file instead of simulating");
  est->add_option("--dump", o.dump_path, "Write the simulated snapshots to a file");
  est->add_option("--out", o.out_path, "CSV output path");

  auto *swn = app.add_subcommand("sweep-n", "Probability of correct decision vs. N");
  add_scenario_flags(swn, o);
  add_estimator_flags(swn, o);
  swn->add_option("--n-list", o.n_list, "Comma-separated snapshot counts");
  swn->add_option("--trials", o.trials, "Trials per point")->capture_default_str();
  swn->add_option("--out", o.out_path, "CSV output path");

  auto *swr = app.add_subcommand("sweep-rho", "Probability of correct decision vs. separation");
  add_scenario_flags(swr, o);
  add_estimator_flags(swr, o);
  swr->add_option("--rho-list", o.rho_list, "Comma-separated separations in degrees");
  swr->add_option("--n", o.n, "Snapshots per trial");
  swr->add_option("--trials", o.trials, "Trials per point")->capture_default_str();
  swr->add_option("--out", o.out_path, "CSV output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (eig->parsed()) {
      return cmd_eigvals(o, out);
    }
    if (fit->parsed()) {
      return cmd_fit(o, out);
    }
    if (est->parsed()) {
      return cmd_estimate(o, out);
    }
    if (swn->parsed()) {
      return cmd_sweep(o, false, out);
    }
    return cmd_sweep(o, true, out);
  } catch (const ConfigError &e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalError &e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

} // namespace sourcecount::cli
