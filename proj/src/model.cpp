#include "sourcecount/model.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "sourcecount/errors.hpp"
#include "sourcecount/signal_gen.hpp"

namespace sourcecount {

HermitianMatrix::HermitianMatrix(const CMatrix &m, double tol) {
  if (m.rows() != m.cols()) {
    throw ConfigError("Hermitian matrix must be square");
  }
  const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (m.size() > 0 && !(asym <= tol)) {
    std::ostringstream msg;
    msg << "matrix is not Hermitian (max |M - M^H| = " << asym << ")";
    throw ConfigError(msg.str());
  }
  *this = from_trusted(m);
}

HermitianMatrix HermitianMatrix::from_trusted(const CMatrix &m) {
  HermitianMatrix h;
  h.m_ = 0.5 * (m + m.adjoint());
  return h;
}

ScenarioConfig validate_scenario(const ScenarioConfig &cfg) {
  const int p = cfg.p;
  if (p < 2) {
    throw ConfigError("p must be at least 2");
  }
  const int q = cfg.num_sources();
  if (q >= p) {
    throw ConfigError("number of sources must be smaller than p");
  }
  std::set<double> doas;
  for (const auto &s : cfg.sources) {
    if (!std::isfinite(s.power) || s.power <= 0.0) {
      throw ConfigError("source power must be positive");
    }
    if (!std::isfinite(s.doa_deg) || s.doa_deg < -90.0 || s.doa_deg > 90.0) {
      throw ConfigError("source doa_deg must lie in [-90, 90]");
    }
    if (!doas.insert(s.doa_deg).second) {
      throw ConfigError("source DOAs must be distinct");
    }
  }
  const auto &noise = cfg.noise;
  if (!std::isfinite(noise.sigma2) || noise.sigma2 <= 0.0) {
    throw ConfigError("sigma2 must be positive");
  }
  if (static_cast<int>(noise.w.size()) != p) {
    throw ConfigError("w must have p entries");
  }
  double sum = 0.0;
  double scale = 0.0;
  for (double wi : noise.w) {
    if (!std::isfinite(wi)) {
      throw ConfigError("w entries must be finite");
    }
    sum += wi;
    scale += noise.sigma2 + std::abs(wi);
  }
  if (std::abs(sum) > 1e-12 * scale) {
    throw ConfigError("w must sum to zero");
  }
  for (double wi : noise.w) {
    if (noise.sigma2 + wi <= 0.0) {
      throw ConfigError("sensor noise power sigma2 + w_i must be positive");
    }
  }
  return cfg;
}

EstimatorConfig validate_estimator(const EstimatorConfig &cfg) {
  if (cfg.max_iter < 1) {
    throw ConfigError("max_iter must be at least 1");
  }
  if (!(cfg.tol_rel > 0.0)) {
    throw ConfigError("tol_rel must be positive");
  }
  if (!(cfg.eig_floor > 0.0)) {
    throw ConfigError("eig_floor must be positive");
  }
  return cfg;
}

HermitianMatrix build_true_covariance(const ScenarioConfig &cfg) {
  validate_scenario(cfg);
  const int p = cfg.p;
  const CMatrix a = steering_matrix(cfg);
  RVector powers(cfg.num_sources());
  for (int k = 0; k < cfg.num_sources(); ++k) {
    powers[k] = cfg.sources[k].power;
  }
  CMatrix r = a * powers.asDiagonal() * a.adjoint();
  for (int i = 0; i < p; ++i) {
    r(i, i) += cfg.noise.sigma2 + cfg.noise.w[i];
  }
  return HermitianMatrix::from_trusted(r);
}

double power_from_snr_db(double snr_db, double sigma2) {
  return sigma2 * std::pow(10.0, snr_db / 10.0);
}

} // namespace sourcecount
