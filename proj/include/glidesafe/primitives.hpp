#pragma once

// Maneuver-space discretization and the table of certified primitives.
// Wind is stored relative to the course at maneuver start: a cell with
// direction 0 is a pure headwind, +-180 deg a tailwind.

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "glidesafe/airframe.hpp"
#include "glidesafe/error.hpp"
#include "glidesafe/guidance.hpp"
#include "glidesafe/parallel.hpp"
#include "glidesafe/units.hpp"
#include "glidesafe/viability.hpp"
#include "glidesafe/windframe.hpp"

namespace glidesafe {

/// Grid axes are kept in presentation units (deg, kt) so that the table
/// header serializes exactly; SI accessors convert on demand.
struct ManeuverGrid {
  std::vector<double> delta_course_deg;
  std::vector<double> wind_speed_kts;
  std::vector<double> wind_direction_deg;  // relative from-direction
  double ref_airspeed_kts = 90.0;

  std::size_t size() const {
    return delta_course_deg.size() * wind_speed_kts.size() * wind_direction_deg.size();
  }

  /// Row-major cell index: course change outer, wind speed, direction inner.
  std::size_t index(std::size_t i_dchi, std::size_t i_speed, std::size_t i_dir) const {
    return (i_dchi * wind_speed_kts.size() + i_speed) * wind_direction_deg.size() + i_dir;
  }

  double delta_course_rad(std::size_t i) const { return units::deg_to_rad(delta_course_deg[i]); }
  double wind_speed_ms(std::size_t i) const { return units::kts_to_ms(wind_speed_kts[i]); }
  double wind_direction_rad(std::size_t i) const {
    return units::deg_to_rad(wind_direction_deg[i]);
  }
  double ref_airspeed_ms() const { return units::ms_from_kts_exact(ref_airspeed_kts); }

  void validate() const {
    auto check = [](const std::vector<double>& v, const char* name) {
      if (v.empty()) throw Error(ErrorCode::kInvalidArgument, std::string(name) + " is empty");
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i])) {
          throw Error(ErrorCode::kInvalidArgument, std::string(name) + " has non-finite entries");
        }
        for (std::size_t j = i + 1; j < v.size(); ++j) {
          if (v[i] == v[j]) {
            throw Error(ErrorCode::kInvalidArgument, std::string(name) + " has duplicates");
          }
        }
      }
    };
    check(delta_course_deg, "course change list");
    check(wind_speed_kts, "wind speed list");
    check(wind_direction_deg, "wind direction list");
    for (double d : delta_course_deg) {
      if (std::abs(d) > 360.0) {
        throw Error(ErrorCode::kInvalidArgument, "course change beyond 360 deg");
      }
    }
    for (double s : wind_speed_kts) {
      if (s < 0.0) throw Error(ErrorCode::kInvalidArgument, "negative wind speed");
    }
    if (!(ref_airspeed_kts > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "reference airspeed must be positive");
    }
  }

  friend bool operator==(const ManeuverGrid&, const ManeuverGrid&) = default;
};

inline std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    out.push_back(count == 1 ? lo : (i + 1 == count ? hi : lo + (hi - lo) * i / (count - 1)));
  }
  return out;
}

/// Course changes -90..90 deg step dchi, wind speeds evenly spaced in
/// [0, max], directions -180 deg + k * step over a full turn.
inline ManeuverGrid make_grid(double dchi_step_deg, int wind_speed_count, double wind_max_kts,
                              int wind_dir_count, double ref_airspeed_kts = 90.0) {
  ManeuverGrid g;
  for (double d = -90.0; d <= 90.0 + 1e-9; d += dchi_step_deg) g.delta_course_deg.push_back(d);
  g.wind_speed_kts = linspace(0.0, wind_max_kts, wind_speed_count);
  for (int k = 0; k < wind_dir_count; ++k) {
    g.wind_direction_deg.push_back(-180.0 + 360.0 * k / wind_dir_count);
  }
  g.ref_airspeed_kts = ref_airspeed_kts;
  return g;
}

/// 13 course changes x 9 wind speeds x 24 directions = 2808 cells.
inline ManeuverGrid default_grid() { return make_grid(15.0, 9, 15.6, 24); }

/// 13 x 3 x 8 = 312 cells for quick runs.
inline ManeuverGrid ci_grid() { return make_grid(15.0, 3, 15.6, 8); }

struct SynthesisConfig {
  AircraftParams aircraft;
  AirspeedEnvelope envelope;
  GuidanceConfig guidance;

  void validate() const {
    aircraft.validate();
    envelope.validate();
    guidance.validate();
  }
};

struct Primitive {
  Maneuver maneuver;
  double wind_speed_kts = 0.0;
  double wind_dir_deg = 0.0;  // relative from-direction of the cell
  double delta_course_deg = 0.0;
  double gamma_g_star_rad = 0.0;
  double horizon_s = 0.0;
  double cost = 0.0;
  double tangency_min = 0.0;
  double tangency_max = 0.0;
  double altitude_drop_m = 0.0;
  double ground_north_m = 0.0;
  double ground_east_m = 0.0;
  double ground_path_m = 0.0;
};

struct TableEntry {
  Primitive primitive;  // certified fields meaningful only when feasible
  bool feasible = false;
};

struct PrimitiveTable {
  SynthesisConfig config;
  ManeuverGrid grid;
  std::vector<TableEntry> entries;

  std::size_t feasible_count() const {
    std::size_t n = 0;
    for (const auto& e : entries) n += e.feasible ? 1 : 0;
    return n;
  }
};

/// Maneuver of grid cell (i, j, k) in the canonical frame (course 0).
inline Maneuver cell_maneuver(const ManeuverGrid& grid, std::size_t i_dchi, std::size_t i_speed,
                              std::size_t i_dir) {
  Maneuver m;
  m.delta_course_rad = grid.delta_course_rad(i_dchi);
  m.wind = WindVector::from_meteorological(grid.wind_speed_ms(i_speed),
                                           grid.wind_direction_rad(i_dir));
  m.ref_airspeed_ms = grid.ref_airspeed_ms();
  m.initial_course_rad = 0.0;
  return m;
}

inline TableEntry certify_cell(const SynthesisConfig& cfg, const ManeuverGrid& grid,
                               std::size_t i_dchi, std::size_t i_speed, std::size_t i_dir) {
  TableEntry entry;
  Primitive& prim = entry.primitive;
  prim.maneuver = cell_maneuver(grid, i_dchi, i_speed, i_dir);
  prim.delta_course_deg = grid.delta_course_deg[i_dchi];
  prim.wind_speed_kts = grid.wind_speed_kts[i_speed];
  prim.wind_dir_deg = grid.wind_direction_deg[i_dir];
  prim.horizon_s = horizon_s(prim.maneuver, cfg.guidance.horizon);
  const GuidanceSolution sol =
      optimize_guidance(cfg.aircraft, cfg.envelope, prim.maneuver, cfg.guidance);
  entry.feasible = sol.converged;
  if (!sol.converged) return entry;
  prim.gamma_g_star_rad = sol.gamma_g_star_rad;
  prim.cost = sol.cost;
  prim.tangency_min = sol.tangency_min;
  prim.tangency_max = sol.tangency_max;
  prim.altitude_drop_m = sol.nominal.altitude_drop_m;
  prim.ground_north_m = sol.nominal.north_m;
  prim.ground_east_m = sol.nominal.east_m;
  prim.ground_path_m = sol.nominal.ground_path_m;
  return entry;
}

/// Solves every grid cell; parallel across cells, order independent of the
/// worker count. `progress`, if set, is called after each finished cell
/// from the worker thread.
inline PrimitiveTable synthesize_table(const SynthesisConfig& cfg, const ManeuverGrid& grid,
                                       unsigned jobs = 1,
                                       const std::function<void(std::size_t)>& progress = {}) {
  cfg.validate();
  grid.validate();
  PrimitiveTable table;
  table.config = cfg;
  table.grid = grid;
  const std::size_t n_speed = grid.wind_speed_kts.size();
  const std::size_t n_dir = grid.wind_direction_deg.size();
  table.entries = parallel_map(grid.size(), jobs, [&](std::size_t cell) {
    const std::size_t i_dir = cell % n_dir;
    const std::size_t i_speed = (cell / n_dir) % n_speed;
    const std::size_t i_dchi = cell / (n_dir * n_speed);
    TableEntry e = certify_cell(cfg, grid, i_dchi, i_speed, i_dir);
    if (progress) progress(cell);
    return e;
  });
  return table;
}

namespace detail {

inline std::size_t nearest_speed(const std::vector<double>& speeds_kts, double speed_kts) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < speeds_kts.size(); ++i) {
    const double d = std::abs(speeds_kts[i] - speed_kts);
    const double db = std::abs(speeds_kts[best] - speed_kts);
    if (d < db || (d == db && speeds_kts[i] < speeds_kts[best])) best = i;
  }
  return best;
}

inline std::size_t nearest_direction(const std::vector<double>& dirs_deg, double dir_deg) {
  std::size_t best = 0;
  auto dist = [&](double a) {
    return units::rad_to_deg(units::circular_distance(units::deg_to_rad(a), units::deg_to_rad(dir_deg)));
  };
  for (std::size_t i = 1; i < dirs_deg.size(); ++i) {
    const double d = dist(dirs_deg[i]);
    const double db = dist(dirs_deg[best]);
    // Tolerance absorbs deg/rad round trips when comparing ties.
    if (d < db - 1e-9 || (std::abs(d - db) <= 1e-9 && dirs_deg[i] < dirs_deg[best])) best = i;
  }
  return best;
}

}  // namespace detail

/// Cell address of a query; Δχ must match a grid value exactly (1e-9 deg).
struct CellIndex {
  std::size_t dchi = 0;
  std::size_t speed = 0;
  std::size_t dir = 0;
};

inline CellIndex locate_cell(const ManeuverGrid& grid, double delta_course_rad,
                             double wind_speed_ms, double rel_from_rad) {
  const double dchi_deg = units::rad_to_deg(delta_course_rad);
  std::optional<std::size_t> i_dchi;
  for (std::size_t i = 0; i < grid.delta_course_deg.size(); ++i) {
    if (std::abs(grid.delta_course_deg[i] - dchi_deg) <= 1e-9) i_dchi = i;
  }
  if (!i_dchi) {
    throw Error(ErrorCode::kNoMatch,
                "course change " + std::to_string(dchi_deg) + " deg is not on the grid");
  }
  return {*i_dchi, detail::nearest_speed(grid.wind_speed_kts, units::ms_to_kts(wind_speed_ms)),
          detail::nearest_direction(grid.wind_direction_deg,
                                    units::rad_to_deg(units::wrap_pi(rel_from_rad)))};
}

/// Primitive for a course change under a wind given relative to the
/// current course (speed, from-direction). Nearest wind cell, exact Δχ.
inline const Primitive& lookup(const PrimitiveTable& table, double delta_course_rad,
                               double wind_speed_ms, double rel_from_rad) {
  if (table.entries.empty()) throw Error(ErrorCode::kNoMatch, "table is empty");
  const CellIndex c = locate_cell(table.grid, delta_course_rad, wind_speed_ms, rel_from_rad);
  const TableEntry& e = table.entries.at(table.grid.index(c.dchi, c.speed, c.dir));
  if (!e.feasible) {
    throw Error(ErrorCode::kCellInfeasible,
                "cell dchi=" + std::to_string(e.primitive.delta_course_deg) +
                    " wind=" + std::to_string(e.primitive.wind_speed_kts) + " kt from " +
                    std::to_string(e.primitive.wind_dir_deg) + " deg is not certified");
  }
  return e.primitive;
}

/// Same query with the wind already expressed in the table frame.
inline const Primitive& lookup(const PrimitiveTable& table, double delta_course_rad,
                               const WindVector& relative_wind) {
  return lookup(table, delta_course_rad, relative_wind.speed_ms(),
                relative_wind.from_direction_rad());
}

/// Query for a vehicle on `course_rad` in the ambient inertial wind.
inline const Primitive& lookup_for_course(const PrimitiveTable& table, double delta_course_rad,
                                          const WindVector& ambient, double course_rad) {
  return lookup(table, delta_course_rad, ambient.speed_ms(),
                units::wrap_pi(ambient.from_direction_rad() - course_rad));
}

}  // namespace glidesafe
