#pragma once

// Executes certified primitives in an ambient steady wind. Each primitive is
// looked up at the course the vehicle actually has when it starts, and its
// gamma command is then held for the whole horizon.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "glidesafe/airframe.hpp"
#include "glidesafe/dynamics.hpp"
#include "glidesafe/error.hpp"
#include "glidesafe/primitives.hpp"
#include "glidesafe/table_io.hpp"
#include "glidesafe/units.hpp"
#include "glidesafe/windframe.hpp"

namespace glidesafe {

inline constexpr double kDefaultSimDt = 0.01;

/// One executed primitive in a trajectory.
struct PrimitiveRecord {
  double start_time_s = 0.0;
  double start_course_rad = 0.0;
  double delta_course_deg = 0.0;
  double cell_wind_kts = 0.0;
  double cell_wind_dir_deg = 0.0;
  double gamma_g_rad = 0.0;
  double horizon_s = 0.0;
};

struct Trajectory {
  std::vector<SimState> states;
  WindVector wind;
  std::string fingerprint;
  std::optional<std::uint64_t> seed;
  std::vector<PrimitiveRecord> sequence;

  double duration_s() const {
    return states.empty() ? 0.0 : states.back().t_s - states.front().t_s;
  }
};

/// Initial state for a run: given airspeed, course and altitude, command
/// fields zeroed until the first primitive sets them.
inline SimState initial_state(double airspeed_ms, double course_rad, double alt_m,
                              double north_m = 0.0, double east_m = 0.0) {
  SimState s;
  s.airspeed_ms = airspeed_ms;
  s.course_rad = course_rad;
  s.alt_m = alt_m;
  s.north_m = north_m;
  s.east_m = east_m;
  s.validate();
  return s;
}

/// Command a primitive applies: gamma_g* and the signed turn for its horizon,
/// bank from the table's reference airspeed.
inline SegmentCommand primitive_command(const AircraftParams& p, const HorizonParams& h,
                                        const Primitive& prim) {
  Maneuver m = prim.maneuver;
  m.initial_course_rad = 0.0;
  SegmentCommand cmd = maneuver_command(p, m, h, prim.gamma_g_star_rad);
  cmd.duration_s = prim.horizon_s;
  return cmd;
}

/// Appends the samples of one primitive started from `start` (the last state
/// already in `out`, or a fresh initial state).
inline void run_primitive(const AircraftParams& p, const HorizonParams& h, const WindVector& wind,
                          const SimState& start, const Primitive& prim, double dt,
                          std::vector<SimState>& out) {
  const SegmentCommand cmd = primitive_command(p, h, prim);
  integrate_segment(p, wind, start, cmd, dt, out);
}

/// Trajectory of a single primitive including its start state.
inline Trajectory run_primitive(const PrimitiveTable& table, const WindVector& wind,
                                SimState start, const Primitive& prim, double dt = kDefaultSimDt) {
  const SegmentCommand cmd = primitive_command(table.config.aircraft, table.config.guidance.horizon, prim);
  Trajectory traj;
  traj.wind = wind;
  traj.fingerprint = config_fingerprint(table.config, table.grid);
  start.gamma_g_cmd_rad = cmd.gamma_g_rad;
  start.bank_rad = cmd.bank_rad;
  start.turn_rate_rad_s = cmd.course_change_rad / cmd.duration_s;
  traj.states.push_back(with_air_angle(table.config.aircraft, wind, start));
  traj.sequence.push_back({start.t_s, start.course_rad, prim.delta_course_deg, prim.wind_speed_kts,
                           prim.wind_dir_deg, prim.gamma_g_star_rad, prim.horizon_s});
  integrate_segment(table.config.aircraft, wind, traj.states.front(), cmd, dt, traj.states);
  return traj;
}

/// Incrementally built multi-primitive run.
class SequenceRunner {
 public:
  SequenceRunner(const PrimitiveTable& table, const WindVector& wind, const SimState& start,
                 double dt = kDefaultSimDt)
      : table_(table), dt_(dt) {
    if (!wind.is_horizontal()) throw Error(ErrorCode::kInvalidArgument, "wind must be horizontal");
    if (!(dt > 0.0)) throw Error(ErrorCode::kInvalidArgument, "dt must be positive");
    traj_.wind = wind;
    traj_.fingerprint = config_fingerprint(table.config, table.grid);
    SimState s = start;
    s.validate();
    s.turn_rate_rad_s = 0.0;
    traj_.states.push_back(s);
  }

  const SimState& current() const { return traj_.states.back(); }

  /// Table entry for a course change at the current course.
  const Primitive& resolve(double delta_course_deg) const {
    try {
      return lookup_for_course(table_, units::deg_to_rad(delta_course_deg), traj_.wind,
                               current().course_rad);
    } catch (const Error& e) {
      throw Error(ErrorCode::kSequenceInfeasible,
                  "primitive " + std::to_string(traj_.sequence.size()) + " (" +
                      std::to_string(delta_course_deg) + " deg): " + e.what());
    }
  }

  /// Course changes usable from the current state.
  std::vector<double> feasible_course_changes() const {
    std::vector<double> out;
    for (double d : table_.grid.delta_course_deg) {
      try {
        resolve(d);
        out.push_back(d);
      } catch (const Error&) {
      }
    }
    return out;
  }

  void append(double delta_course_deg) { append(resolve(delta_course_deg)); }

  void append(const Primitive& prim) {
    const AircraftParams& p = table_.config.aircraft;
    const SegmentCommand cmd = primitive_command(p, table_.config.guidance.horizon, prim);
    if (traj_.sequence.empty()) {
      SimState& first = traj_.states.back();
      first.gamma_g_cmd_rad = cmd.gamma_g_rad;
      first.bank_rad = cmd.bank_rad;
      first.turn_rate_rad_s = cmd.course_change_rad / cmd.duration_s;
      first = with_air_angle(p, traj_.wind, first);
    }
    const SimState start = current();
    traj_.sequence.push_back({start.t_s, start.course_rad, prim.delta_course_deg,
                              prim.wind_speed_kts, prim.wind_dir_deg, prim.gamma_g_star_rad,
                              prim.horizon_s});
    integrate_segment(p, traj_.wind, start, cmd, dt_, traj_.states);
  }

  Trajectory& trajectory() { return traj_; }
  Trajectory take() { return std::move(traj_); }

 private:
  const PrimitiveTable& table_;
  double dt_;
  Trajectory traj_;
};

/// Runs a course-change sequence (deg). Each entry is looked up at the
/// course reached by the previous ones; an empty sequence yields the start
/// state alone.
inline Trajectory run_sequence(const PrimitiveTable& table, const WindVector& wind,
                               const SimState& start, const std::vector<double>& delta_course_deg,
                               double dt = kDefaultSimDt) {
  SequenceRunner runner(table, wind, start, dt);
  for (double d : delta_course_deg) runner.append(d);
  return runner.take();
}

/// Seeded random campaign run: draws feasible course changes uniformly
/// until at least `min_primitives` are flown and `min_duration_s` elapsed.
inline Trajectory run_random_sequence(const PrimitiveTable& table, const WindVector& wind,
                                      const SimState& start, std::uint64_t seed,
                                      std::size_t min_primitives, double min_duration_s = 0.0,
                                      double dt = kDefaultSimDt) {
  SequenceRunner runner(table, wind, start, dt);
  std::mt19937_64 rng(seed);
  std::size_t flown = 0;
  while (flown < min_primitives || runner.current().t_s - start.t_s < min_duration_s) {
    const auto options = runner.feasible_course_changes();
    if (options.empty()) {
      throw Error(ErrorCode::kSequenceInfeasible, "no certified primitive for the current course");
    }
    runner.append(options[rng() % options.size()]);
    ++flown;
  }
  Trajectory t = runner.take();
  t.seed = seed;
  return t;
}

/// Per-step check of the air-mass energy balance
///   d/dt (v^2/2 + g h_air) = -D v / m,  h_air' = v sin(gamma_a),
/// both sides integrated by the trapezoid rule over each step using the
/// command that governed the step.
struct EnergyCheck {
  std::size_t steps = 0;
  std::size_t violations = 0;         // relative mismatch above tolerance
  std::size_t positive_rates = 0;     // dissipation positive beyond tolerance
  double max_relative_error = 0.0;
};

inline constexpr double kEnergyRelTol = 1e-4;

inline EnergyCheck check_energy(const AircraftParams& p, const Trajectory& traj,
                                double rel_tol = kEnergyRelTol) {
  EnergyCheck out;
  const double m = p.mass_kg;
  const double g = p.gravity_ms2;
  for (std::size_t k = 0; k + 1 < traj.states.size(); ++k) {
    const SimState& b = traj.states[k + 1];
    SimState a = traj.states[k];
    a.gamma_g_cmd_rad = b.gamma_g_cmd_rad;
    a.bank_rad = b.bank_rad;
    a.turn_rate_rad_s = b.turn_rate_rad_s;
    a = with_air_angle(p, traj.wind, a);
    const double dt = b.t_s - a.t_s;
    const double climb = 0.5 * dt * (a.airspeed_ms * std::sin(a.gamma_air_rad) +
                                     b.airspeed_ms * std::sin(b.gamma_air_rad));
    const double de = 0.5 * (b.airspeed_ms * b.airspeed_ms - a.airspeed_ms * a.airspeed_ms) + g * climb;
    const double pa = detail::drag_unchecked(p, a.airspeed_ms, a.gamma_air_rad, a.bank_rad) * a.airspeed_ms / m;
    const double pb = detail::drag_unchecked(p, b.airspeed_ms, b.gamma_air_rad, b.bank_rad) * b.airspeed_ms / m;
    const double expected = -0.5 * dt * (pa + pb);
    const double rel = std::abs(de - expected) / std::abs(expected);
    ++out.steps;
    out.max_relative_error = std::max(out.max_relative_error, rel);
    if (rel > rel_tol) ++out.violations;
    if (de > rel_tol * std::abs(expected)) ++out.positive_rates;
  }
  return out;
}

// ---------------------------------------------------------------- CSV

inline constexpr const char* kTrajectoryCsvHeader =
    "t_s,north_m,east_m,alt_m,airspeed_kts,gamma_g_deg,gamma_a_deg,course_deg,bank_deg";

namespace detail {

inline void append_number(std::string& out, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

}  // namespace detail

/// CSV text of a trajectory. Metadata goes into leading '#' lines.
inline std::string trajectory_to_csv(const Trajectory& traj) {
  std::string out;
  out += "# fingerprint=" + traj.fingerprint + "\n";
  out += "# wind_kts=";
  detail::append_number(out, units::ms_to_kts(traj.wind.speed_ms()));
  out += " wind_from_deg=";
  detail::append_number(out, units::rad_to_deg(traj.wind.from_direction_rad()));
  out += "\n";
  if (traj.seed) out += "# seed=" + std::to_string(*traj.seed) + "\n";
  out += "# sequence_deg=";
  for (std::size_t i = 0; i < traj.sequence.size(); ++i) {
    if (i) out += ' ';
    detail::append_number(out, traj.sequence[i].delta_course_deg);
  }
  out += "\n";
  out += kTrajectoryCsvHeader;
  out += '\n';
  for (const SimState& s : traj.states) {
    const double fields[] = {s.t_s,
                             s.north_m,
                             s.east_m,
                             s.alt_m,
                             units::ms_to_kts(s.airspeed_ms),
                             units::rad_to_deg(s.gamma_g_cmd_rad),
                             units::rad_to_deg(s.gamma_air_rad),
                             units::rad_to_deg(s.course_rad),
                             units::rad_to_deg(s.bank_rad)};
    for (std::size_t i = 0; i < std::size(fields); ++i) {
      if (i) out += ',';
      detail::append_number(out, fields[i]);
    }
    out += '\n';
  }
  return out;
}

inline void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::kIoError, "cannot open " + path + " for writing");
  f << trajectory_to_csv(traj);
  if (!f) throw Error(ErrorCode::kIoError, "failed writing " + path);
}

/// Reads the state columns back (SI units). Metadata lines are skipped.
inline std::vector<SimState> read_trajectory_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::kIoError, "cannot open " + path);
  std::vector<SimState> states;
  std::string line;
  bool header_seen = false;
  std::size_t line_no = 0;
  while (std::getline(f, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != kTrajectoryCsvHeader) {
        throw Error(ErrorCode::kIoError, path + ": unexpected CSV header");
      }
      header_seen = true;
      continue;
    }
    double v[9];
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (int i = 0; i < 9; ++i) {
      const auto res = std::from_chars(p, end, v[i]);
      if (res.ec != std::errc() || (i < 8 && (res.ptr == end || *res.ptr != ',')) ||
          (i == 8 && res.ptr != end)) {
        throw Error(ErrorCode::kIoError, path + ":" + std::to_string(line_no) + ": malformed row");
      }
      p = res.ptr + 1;
    }
    SimState s;
    s.t_s = v[0];
    s.north_m = v[1];
    s.east_m = v[2];
    s.alt_m = v[3];
    s.airspeed_ms = units::ms_from_kts_exact(v[4]);
    s.gamma_g_cmd_rad = units::rad_from_deg_exact(v[5]);
    s.gamma_air_rad = units::rad_from_deg_exact(v[6]);
    s.course_rad = units::rad_from_deg_exact(v[7]);
    s.bank_rad = units::rad_from_deg_exact(v[8]);
    states.push_back(s);
  }
  if (!header_seen) throw Error(ErrorCode::kIoError, path + ": missing CSV header");
  return states;
}

}  // namespace glidesafe
