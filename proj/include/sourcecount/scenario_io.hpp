#pragma once

#include <filesystem>
#include <string>

#include "sourcecount/model.hpp"

namespace sourcecount {

// JSON scenario document:
//   { "p": 10,
//     "sources": [ { "doa_deg": 0.0, "power": 1.0 }, ... ],
//     "noise": { "sigma2": 1.0, "w": [ ... p values ... ] },
//     "distribution": "gaussian" | "laplacian" }
// "w" may be omitted (all zeros); "distribution" defaults to gaussian.
// The result is validated; any problem raises ConfigError.
ScenarioConfig parse_scenario(const std::string &json_text);
ScenarioConfig load_scenario(const std::filesystem::path &path);
std::string dump_scenario(const ScenarioConfig &cfg);

} // namespace sourcecount
