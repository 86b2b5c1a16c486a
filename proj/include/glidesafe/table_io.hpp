#pragma once

// Primitive table file: a JSON header describing everything that produced
// the table, its fingerprint, and one entry per grid cell in row-major order.

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "glidesafe/error.hpp"
#include "glidesafe/json_io.hpp"
#include "glidesafe/primitives.hpp"
#include "glidesafe/units.hpp"

namespace glidesafe {

inline constexpr int kTableSchemaVersion = 1;

inline nlohmann::json table_header(const SynthesisConfig& cfg, const ManeuverGrid& grid) {
  using namespace json_io;
  return {{"schema_version", kTableSchemaVersion},
          {"aircraft", aircraft_to_json(cfg.aircraft)},
          {"envelope", envelope_to_json(cfg.envelope)},
          {"grid", grid_to_json(grid)},
          {"horizon", horizon_to_json(cfg.guidance.horizon)},
          {"surrogate", surrogate_to_json(cfg.guidance.surrogate, cfg.guidance.optimizer)}};
}

/// Fingerprint of everything that determines the table contents.
inline std::string config_fingerprint(const SynthesisConfig& cfg, const ManeuverGrid& grid) {
  return json_io::fnv1a_hex(table_header(cfg, grid).dump());
}

/// Relative slack allowed between the stored altitude drop and
/// -tan(gamma) times the ground path.
inline constexpr double kAltitudeConsistencyTol = 0.01;

inline bool altitude_consistent(const Primitive& p) {
  const double predicted = -std::tan(p.gamma_g_star_rad) * p.ground_path_m;
  return std::abs(p.altitude_drop_m - predicted) <=
         kAltitudeConsistencyTol * std::abs(predicted) + 1e-6;
}

inline nlohmann::json table_to_json(const PrimitiveTable& table) {
  using nlohmann::json;
  json doc = table_header(table.config, table.grid);
  doc["fingerprint"] = config_fingerprint(table.config, table.grid);
  json entries = json::array();
  for (const auto& e : table.entries) {
    const Primitive& p = e.primitive;
    json j = {{"dchi_deg", p.delta_course_deg},
              {"wind_kts", p.wind_speed_kts},
              {"wind_dir_deg", p.wind_dir_deg},
              {"horizon_s", p.horizon_s},
              {"feasible", e.feasible}};
    if (e.feasible) {
      j["gamma_g_deg"] = units::rad_to_deg(p.gamma_g_star_rad);
      j["cost"] = p.cost;
      j["f_tilde_vmin"] = p.tangency_min;
      j["f_tilde_vmax"] = p.tangency_max;
      j["altitude_drop_m"] = p.altitude_drop_m;
      j["ground_disp_m"] = {p.ground_north_m, p.ground_east_m};
      j["ground_path_m"] = p.ground_path_m;
    } else {
      for (const char* key : {"gamma_g_deg", "cost", "f_tilde_vmin", "f_tilde_vmax",
                              "altitude_drop_m", "ground_disp_m", "ground_path_m"}) {
        j[key] = nullptr;
      }
    }
    entries.push_back(std::move(j));
  }
  doc["entries"] = std::move(entries);
  return doc;
}

inline std::string table_to_string(const PrimitiveTable& table) {
  return table_to_json(table).dump(1) + "\n";
}

/// Parses and validates a table document. When `expected_fingerprint` is
/// non-empty the header must match it.
inline PrimitiveTable table_from_json(const nlohmann::json& doc,
                                      const std::string& expected_fingerprint = {}) {
  using namespace json_io;
  const int version = get<int>(doc, "schema_version");
  if (version != kTableSchemaVersion) {
    throw Error(ErrorCode::kSchemaMismatch, "schema_version " + std::to_string(version));
  }
  PrimitiveTable table;
  table.config.aircraft = aircraft_from_json(doc.at("aircraft"));
  table.config.envelope = envelope_from_json(doc.at("envelope"));
  table.config.guidance.horizon = horizon_from_json(doc.at("horizon"));
  surrogate_from_json(doc.at("surrogate"), table.config.guidance.surrogate,
                      table.config.guidance.optimizer);
  table.grid = grid_from_json(doc.at("grid"));

  const std::string stored = get<std::string>(doc, "fingerprint");
  const std::string actual = config_fingerprint(table.config, table.grid);
  if (stored != actual) {
    throw Error(ErrorCode::kSchemaMismatch, "header fingerprint " + actual + " != stored " + stored);
  }
  if (!expected_fingerprint.empty() && expected_fingerprint != actual) {
    throw Error(ErrorCode::kSchemaMismatch,
                "table was built with a different configuration (" + actual + ")");
  }
  try {
    table.config.validate();
    table.grid.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kInvariantViolation, e.what());
  }

  const auto& entries = doc.at("entries");
  if (!entries.is_array() || entries.size() != table.grid.size()) {
    throw Error(ErrorCode::kInvariantViolation, "entry count does not match the grid");
  }
  const ManeuverGrid& g = table.grid;
  table.entries.reserve(entries.size());
  std::size_t cell = 0;
  for (std::size_t i = 0; i < g.delta_course_deg.size(); ++i) {
    for (std::size_t s = 0; s < g.wind_speed_kts.size(); ++s) {
      for (std::size_t d = 0; d < g.wind_direction_deg.size(); ++d, ++cell) {
        const auto& j = entries[cell];
        TableEntry e;
        Primitive& p = e.primitive;
        p.delta_course_deg = get<double>(j, "dchi_deg");
        p.wind_speed_kts = get<double>(j, "wind_kts");
        p.wind_dir_deg = get<double>(j, "wind_dir_deg");
        if (p.delta_course_deg != g.delta_course_deg[i] || p.wind_speed_kts != g.wind_speed_kts[s] ||
            p.wind_dir_deg != g.wind_direction_deg[d]) {
          throw Error(ErrorCode::kInvariantViolation,
                      "entry " + std::to_string(cell) + " is out of grid order");
        }
        p.maneuver = cell_maneuver(g, i, s, d);
        p.horizon_s = get<double>(j, "horizon_s");
        e.feasible = get<bool>(j, "feasible");
        if (e.feasible) {
          p.gamma_g_star_rad = units::rad_from_deg_exact(get<double>(j, "gamma_g_deg"));
          p.cost = get<double>(j, "cost");
          p.tangency_min = get<double>(j, "f_tilde_vmin");
          p.tangency_max = get<double>(j, "f_tilde_vmax");
          p.altitude_drop_m = get<double>(j, "altitude_drop_m");
          const auto disp = get<std::vector<double>>(j, "ground_disp_m");
          if (disp.size() != 2) throw Error(ErrorCode::kSchemaMismatch, "ground_disp_m needs [n, e]");
          p.ground_north_m = disp[0];
          p.ground_east_m = disp[1];
          p.ground_path_m = get<double>(j, "ground_path_m");
          if (!(p.tangency_min >= 0.0) || !(p.tangency_max <= 0.0)) {
            throw Error(ErrorCode::kInvariantViolation,
                        "entry " + std::to_string(cell) + " is marked feasible without tangency signs");
          }
          if (!(p.cost >= 0.0) || !(p.altitude_drop_m >= 0.0) || !altitude_consistent(p)) {
            throw Error(ErrorCode::kInvariantViolation,
                        "entry " + std::to_string(cell) + " has inconsistent cost or altitude drop");
          }
        }
        table.entries.push_back(std::move(e));
      }
    }
  }
  return table;
}

inline void save_table(const PrimitiveTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open " + path + " for writing");
  out << table_to_string(table);
  if (!out) throw Error(ErrorCode::kIoError, "failed writing " + path);
}

inline PrimitiveTable load_table(const std::string& path, const std::string& expected_fingerprint = {}) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSchemaMismatch, path + ": " + e.what());
  }
  return table_from_json(doc, expected_fingerprint);
}

}  // namespace glidesafe
