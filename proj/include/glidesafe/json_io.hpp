#pragma once

// JSON mappings for the configuration blocks shared by config files and the
// primitive-table header. Units in key names are what is stored; SI values
// are recovered with exact preimages so headers re-serialize identically.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <string>

#include "json.hpp"

#include "glidesafe/airframe.hpp"
#include "glidesafe/error.hpp"
#include "glidesafe/guidance.hpp"
#include "glidesafe/primitives.hpp"
#include "glidesafe/units.hpp"
#include "glidesafe/viability.hpp"

namespace glidesafe::json_io {

using nlohmann::json;

template <typename T>
T get(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::kSchemaMismatch, std::string("missing key '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kSchemaMismatch, std::string("bad value for '") + key + "': " + e.what());
  }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return fallback;
  return get<T>(j, key);
}

inline json aircraft_to_json(const AircraftParams& p) {
  return {{"mass_kg", p.mass_kg}, {"wing_area_m2", p.wing_area_m2}, {"cd0", p.cd0},
          {"induced_k", p.induced_factor_k}, {"rho", p.air_density_kgm3}, {"g", p.gravity_ms2}};
}

inline AircraftParams aircraft_from_json(const json& j) {
  AircraftParams p;
  p.mass_kg = get<double>(j, "mass_kg");
  p.wing_area_m2 = get<double>(j, "wing_area_m2");
  p.cd0 = get<double>(j, "cd0");
  p.induced_factor_k = get<double>(j, "induced_k");
  p.air_density_kgm3 = get<double>(j, "rho");
  p.gravity_ms2 = get<double>(j, "g");
  return p;
}

inline json envelope_to_json(const AirspeedEnvelope& e) {
  return {{"v_min_kts", units::ms_to_kts(e.v_min_ms)}, {"v_max_kts", units::ms_to_kts(e.v_max_ms)}};
}

inline AirspeedEnvelope envelope_from_kts(double lo_kts, double hi_kts) {
  return {units::ms_from_kts_exact(lo_kts), units::ms_from_kts_exact(hi_kts)};
}

inline AirspeedEnvelope envelope_from_json(const json& j) {
  return envelope_from_kts(get<double>(j, "v_min_kts"), get<double>(j, "v_max_kts"));
}

inline json horizon_to_json(const HorizonParams& h) {
  json j = {{"turn_rate_dps", units::rad_to_deg(h.turn_rate_rad_s)}, {"tau_s", h.tau_s}};
  j["cap_s"] = std::isfinite(h.cap_s) ? json(h.cap_s) : json(nullptr);
  return j;
}

inline HorizonParams horizon_from_json(const json& j) {
  HorizonParams h;
  h.turn_rate_rad_s = units::rad_from_deg_exact(get<double>(j, "turn_rate_dps"));
  h.tau_s = get<double>(j, "tau_s");
  h.cap_s = get_or<double>(j, "cap_s", std::numeric_limits<double>::infinity());
  return h;
}

/// Surrogate and optimizer settings share one block.
inline json surrogate_to_json(const SurrogateParams& s, const OptimizerParams& o) {
  return {{"dt_s", s.dt_s},
          {"half_window", s.half_window},
          {"sim_dt_s", s.sim_dt_s},
          {"grid_points", o.grid_points},
          {"margin_lo", o.margin_lo},
          {"margin_hi", o.margin_hi},
          {"tolerance_rad", o.tolerance_rad},
          {"gamma_box_deg",
           {units::rad_to_deg(o.gamma_box.lo_rad), units::rad_to_deg(o.gamma_box.hi_rad)}}};
}

inline void surrogate_from_json(const json& j, SurrogateParams& s, OptimizerParams& o) {
  s.dt_s = get_or<double>(j, "dt_s", s.dt_s);
  s.half_window = get_or<int>(j, "half_window", s.half_window);
  s.sim_dt_s = get_or<double>(j, "sim_dt_s", s.sim_dt_s);
  o.grid_points = get_or<int>(j, "grid_points", o.grid_points);
  o.margin_lo = get_or<double>(j, "margin_lo", o.margin_lo);
  o.margin_hi = get_or<double>(j, "margin_hi", o.margin_hi);
  o.tolerance_rad = get_or<double>(j, "tolerance_rad", o.tolerance_rad);
  if (j.contains("gamma_box_deg")) {
    const auto box = get<std::vector<double>>(j, "gamma_box_deg");
    if (box.size() != 2) throw Error(ErrorCode::kSchemaMismatch, "gamma_box_deg needs [lo, hi]");
    o.gamma_box = {units::rad_from_deg_exact(box[0]), units::rad_from_deg_exact(box[1]), false};
  }
}

inline json grid_to_json(const ManeuverGrid& g) {
  return {{"dchi_deg", g.delta_course_deg},
          {"wind_kts", g.wind_speed_kts},
          {"wind_dir_deg", g.wind_direction_deg},
          {"ref_airspeed_kts", g.ref_airspeed_kts}};
}

inline ManeuverGrid grid_from_json(const json& j) {
  ManeuverGrid g;
  g.delta_course_deg = get<std::vector<double>>(j, "dchi_deg");
  g.wind_speed_kts = get<std::vector<double>>(j, "wind_kts");
  g.wind_direction_deg = get<std::vector<double>>(j, "wind_dir_deg");
  g.ref_airspeed_kts = get<double>(j, "ref_airspeed_kts");
  return g;
}

/// 64-bit FNV-1a, hex encoded.
inline std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace glidesafe::json_io
