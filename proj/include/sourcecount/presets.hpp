#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "sourcecount/model.hpp"

namespace sourcecount {

/// w = scale * sigma2 * [-(p-1)/p, -(p-3)/p, ..., (p-1)/p]; zero-sum.
std::vector<double> linear_mismatch(int p, double sigma2, double scale);

inline constexpr double kWeakMismatch = 0.1;
inline constexpr double kStrongMismatch = 0.5;

/// 10-element ULA, three equal-power sources at [0, 5.7, 11.4] degrees.
ScenarioConfig three_source_scenario(double mismatch_scale, double snr_db = 0.0,
                                     SourceDistribution dist = SourceDistribution::Gaussian);

/// Sources at [0, rho, 2 rho, ...] degrees; other fields from `base`.
ScenarioConfig with_separation(const ScenarioConfig &base, double rho_deg);

/// Figure presets: fig1 (no mismatch), fig2/fig3 (weak), fig4/fig5 (strong).
struct Preset {
  ScenarioConfig scenario;
  /// Default snapshot grid (snapshot sweeps) or fixed N (separation sweeps).
  std::vector<long> n_list;
  std::vector<double> rho_list;
  bool separation = false;
};

std::optional<Preset> find_preset(std::string_view name, double snr_db = 0.0,
                                  SourceDistribution dist = SourceDistribution::Gaussian);

std::vector<long> default_n_grid();
std::vector<double> default_rho_grid();

} // namespace sourcecount
