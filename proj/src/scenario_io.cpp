#include "sourcecount/scenario_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sourcecount/errors.hpp"

namespace sourcecount {

using nlohmann::json;

namespace {

SourceDistribution parse_distribution(const std::string &s) {
  if (s == "gaussian") {
    return SourceDistribution::Gaussian;
  }
  if (s == "laplacian") {
    return SourceDistribution::Laplacian;
  }
  throw ConfigError("unknown distribution '" + s + "' (expected gaussian or laplacian)");
}

} // namespace

ScenarioConfig parse_scenario(const std::string &json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error &e) {
    throw ConfigError(std::string("scenario JSON parse error: ") + e.what());
  }
  ScenarioConfig cfg;
  try {
    cfg.p = doc.at("p").get<int>();
    for (const auto &src : doc.value("sources", json::array())) {
      cfg.sources.push_back({src.at("doa_deg").get<double>(), src.at("power").get<double>()});
    }
    const auto &noise = doc.at("noise");
    cfg.noise.sigma2 = noise.at("sigma2").get<double>();
    if (noise.contains("w")) {
      cfg.noise.w = noise.at("w").get<std::vector<double>>();
    } else {
      cfg.noise.w.assign(cfg.p > 0 ? cfg.p : 0, 0.0);
    }
    cfg.distribution = parse_distribution(doc.value("distribution", std::string("gaussian")));
  } catch (const json::exception &e) {
    throw ConfigError(std::string("scenario JSON: ") + e.what());
  }
  return validate_scenario(cfg);
}

ScenarioConfig load_scenario(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open scenario file " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string dump_scenario(const ScenarioConfig &cfg) {
  json doc;
  doc["p"] = cfg.p;
  doc["sources"] = json::array();
  for (const auto &s : cfg.sources) {
    doc["sources"].push_back({{"doa_deg", s.doa_deg}, {"power", s.power}});
  }
  doc["noise"] = {{"sigma2", cfg.noise.sigma2}, {"w", cfg.noise.w}};
  doc["distribution"] =
      cfg.distribution == SourceDistribution::Gaussian ? "gaussian" : "laplacian";
  return doc.dump(2);
}

} // namespace sourcecount
