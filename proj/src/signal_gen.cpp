#include "sourcecount/signal_gen.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "sourcecount/errors.hpp"
#include "sourcecount/kernels.hpp"

namespace sourcecount {

CVector steering_vector(double doa_deg, int p) {
  const double phase = std::numbers::pi * std::sin(doa_deg * std::numbers::pi / 180.0);
  CVector a(p);
  for (int k = 0; k < p; ++k) {
    a[k] = std::polar(1.0, phase * k);
  }
  return a;
}

CMatrix steering_matrix(const ScenarioConfig &cfg) {
  CMatrix a(cfg.p, cfg.num_sources());
  for (int k = 0; k < cfg.num_sources(); ++k) {
    a.col(k) = steering_vector(cfg.sources[k].doa_deg, cfg.p);
  }
  return a;
}

SnapshotMatrix sample_sources(const ScenarioConfig &cfg, int n, RngStream &rng) {
  if (n < 1) {
    throw ConfigError("number of snapshots must be at least 1");
  }
  const int q = cfg.num_sources();
  SnapshotMatrix s(q, n);
  auto &eng = rng.engine();
  for (int k = 0; k < q; ++k) {
    const double power = cfg.sources[k].power;
    if (cfg.distribution == SourceDistribution::Gaussian) {
      std::normal_distribution<double> g(0.0, std::sqrt(power / 2.0));
      for (int t = 0; t < n; ++t) {
        const double re = g(eng);
        const double im = g(eng);
        s(k, t) = {re, im};
      }
    } else {
      // |Laplace(alpha)| ~ Exp(1/alpha); variance per component 2 alpha^2.
      const double alpha = std::sqrt(power) / 2.0;
      std::exponential_distribution<double> mag(1.0 / alpha);
      std::bernoulli_distribution sign(0.5);
      auto draw = [&] { return sign(eng) ? mag(eng) : -mag(eng); };
      for (int t = 0; t < n; ++t) {
        const double re = draw();
        const double im = draw();
        s(k, t) = {re, im};
      }
    }
  }
  return s;
}

SnapshotMatrix sample_noise(const NoiseProfile &noise, int n, RngStream &rng) {
  if (n < 1) {
    throw ConfigError("number of snapshots must be at least 1");
  }
  const int p = static_cast<int>(noise.w.size());
  SnapshotMatrix x(p, n);
  auto &eng = rng.engine();
  for (int i = 0; i < p; ++i) {
    std::normal_distribution<double> g(0.0, std::sqrt((noise.sigma2 + noise.w[i]) / 2.0));
    for (int t = 0; t < n; ++t) {
      const double re = g(eng);
      const double im = g(eng);
      x(i, t) = {re, im};
    }
  }
  return x;
}

SnapshotBlock assemble_snapshots(const CMatrix &steering, const SnapshotMatrix &sources,
                                 const SnapshotMatrix &noise) {
  if (steering.rows() != noise.rows() || steering.cols() != sources.rows() ||
      sources.cols() != noise.cols()) {
    throw ConfigError("snapshot assembly: inconsistent shapes");
  }
  SnapshotBlock block{noise};
  const auto n = static_cast<std::size_t>(noise.cols());
  for (Eigen::Index i = 0; i < steering.rows(); ++i) {
    std::span<cdouble> row(block.data.row(i).data(), n);
    for (Eigen::Index k = 0; k < steering.cols(); ++k) {
      kernels::axpy(steering(i, k), std::span<const cdouble>(sources.row(k).data(), n), row);
    }
  }
  return block;
}

SnapshotBlock generate_snapshots(const ScenarioConfig &cfg, int n, RngStream &rng) {
  validate_scenario(cfg);
  const SnapshotMatrix s = sample_sources(cfg, n, rng);
  const SnapshotMatrix noise = sample_noise(cfg.noise, n, rng);
  return assemble_snapshots(steering_matrix(cfg), s, noise);
}

} // namespace sourcecount
