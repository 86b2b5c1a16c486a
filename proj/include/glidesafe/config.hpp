#pragma once

// Run configuration files. Presentation units (kt, deg) on disk.
//
//   {
//     "aircraft": "aircraft_engine_out.json" | { ...inline... },
//     "envelope_kts": [80, 100],
//     "grid": "default" | "ci" | { "dchi_deg": [...], "wind_kts": [...],
//                                 "wind_dir_deg": [...], "ref_airspeed_kts": 90 },
//     "guidance": { "turn_rate_dps": 3, "tau_s": 10, "dt_s": 0.05, "half_window": 5, ... },
//     "wind": { "speed_kts": 15, "direction_deg": 0 },
//     "seed": 1,
//     "jobs": 0
//   }
//
// Relative aircraft paths resolve against the config file's directory.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

#include "glidesafe/error.hpp"
#include "glidesafe/json_io.hpp"
#include "glidesafe/primitives.hpp"
#include "glidesafe/windframe.hpp"

namespace glidesafe {

struct RunConfig {
  SynthesisConfig synthesis;
  ManeuverGrid grid = default_grid();
  WindVector wind;
  std::uint64_t seed = 1;
  int jobs = 0;

  void validate() const {
    synthesis.validate();
    grid.validate();
    if (!wind.is_horizontal()) throw Error(ErrorCode::kInvalidArgument, "wind must be horizontal");
  }
};

namespace detail {

inline nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kConfigError, "cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfigError, path.string() + ": " + e.what());
  }
}

inline ManeuverGrid grid_from_config(const nlohmann::json& j) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (name == "default") return default_grid();
    if (name == "ci") return ci_grid();
    throw Error(ErrorCode::kConfigError, "unknown grid preset '" + name + "'");
  }
  ManeuverGrid g = json_io::grid_from_json(j);
  return g;
}

}  // namespace detail

/// Builds a RunConfig from parsed JSON. Missing keys keep their defaults.
/// Every failure surfaces as ConfigError.
inline RunConfig run_config_from_json(const nlohmann::json& j,
                                      const std::filesystem::path& base_dir = {}) {
  using namespace json_io;
  RunConfig cfg;
  try {
    if (!j.is_object()) throw Error(ErrorCode::kConfigError, "config must be a JSON object");
    if (j.contains("aircraft")) {
      const auto& a = j.at("aircraft");
      if (a.is_string()) {
        std::filesystem::path path = a.get<std::string>();
        if (path.is_relative()) path = base_dir / path;
        cfg.synthesis.aircraft = aircraft_from_json(detail::read_json_file(path));
      } else {
        cfg.synthesis.aircraft = aircraft_from_json(a);
      }
    }
    if (j.contains("envelope_kts")) {
      const auto env = get<std::vector<double>>(j, "envelope_kts");
      if (env.size() != 2) throw Error(ErrorCode::kConfigError, "envelope_kts needs [lo, hi]");
      cfg.synthesis.envelope = envelope_from_kts(env[0], env[1]);
    }
    if (j.contains("grid")) cfg.grid = detail::grid_from_config(j.at("grid"));
    if (j.contains("guidance")) {
      const auto& gj = j.at("guidance");
      GuidanceConfig& g = cfg.synthesis.guidance;
      if (gj.contains("turn_rate_dps")) {
        g.horizon.turn_rate_rad_s = units::rad_from_deg_exact(get<double>(gj, "turn_rate_dps"));
      }
      g.horizon.tau_s = get_or<double>(gj, "tau_s", g.horizon.tau_s);
      g.horizon.cap_s = get_or<double>(gj, "cap_s", g.horizon.cap_s);
      surrogate_from_json(gj, g.surrogate, g.optimizer);
    }
    if (j.contains("wind")) {
      const auto& w = j.at("wind");
      cfg.wind = WindVector::from_meteorological(
          units::kts_to_ms(get_or<double>(w, "speed_kts", 0.0)),
          units::deg_to_rad(get_or<double>(w, "direction_deg", 0.0)));
    }
    cfg.seed = get_or<std::uint64_t>(j, "seed", cfg.seed);
    cfg.jobs = get_or<int>(j, "jobs", cfg.jobs);
    cfg.validate();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kConfigError) throw;
    throw Error(ErrorCode::kConfigError, e.what());
  }
  return cfg;
}

inline RunConfig load_run_config(const std::filesystem::path& path) {
  return run_config_from_json(detail::read_json_file(path), path.parent_path());
}

}  // namespace glidesafe
