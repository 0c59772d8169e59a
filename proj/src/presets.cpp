#include "sourcecount/presets.hpp"


namespace sourcecount {

std::vector<double> linear_mismatch(int p, double sigma2, double scale) {
  std::vector<double> w(p);
  for (int i = 0; i < p; ++i) {
    w[i] = scale * sigma2 * (2.0 * i - (p - 1)) / p;
  }
  return w;
}

ScenarioConfig three_source_scenario(double mismatch_scale, double snr_db,
                                     SourceDistribution dist) {
  ScenarioConfig cfg;
  cfg.p = 10;
  cfg.noise.sigma2 = 1.0;
  cfg.noise.w = linear_mismatch(cfg.p, cfg.noise.sigma2, mismatch_scale);
  const double power = power_from_snr_db(snr_db, cfg.noise.sigma2);
  for (double doa : {0.0, 5.7, 11.4}) {
    cfg.sources.push_back({doa, power});
  }
  cfg.distribution = dist;
  return cfg;
}

ScenarioConfig with_separation(const ScenarioConfig &base, double rho_deg) {
  ScenarioConfig cfg = base;
  for (std::size_t k = 0; k < cfg.sources.size(); ++k) {
    cfg.sources[k].doa_deg = rho_deg * static_cast<double>(k);
  }
  return cfg;
}

std::vector<long> default_n_grid() {
  return {100, 200, 350, 500, 750, 1000, 2000, 5000, 10000, 20000};
}

std::vector<double> default_rho_grid() { return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}; }

std::optional<Preset> find_preset(std::string_view name, double snr_db,
                                  SourceDistribution dist) {
  Preset preset;
  if (name == "fig1") {
    preset.scenario = three_source_scenario(0.0, snr_db, dist);
  } else if (name == "fig2" || name == "fig3") {
    preset.scenario = three_source_scenario(kWeakMismatch, snr_db, dist);
  } else if (name == "fig4" || name == "fig5") {
    preset.scenario = three_source_scenario(kStrongMismatch, snr_db, dist);
  } else {
    return std::nullopt;
  }
  if (name == "fig3") {
    preset.separation = true;
    preset.n_list = {15000};
  } else if (name == "fig5") {
    preset.separation = true;
    preset.n_list = {250};
  } else {
    preset.n_list = default_n_grid();
  }
  preset.rho_list = default_rho_grid();
  return preset;
}

} // namespace sourcecount
