#pragma once

// Viability-constrained guidance: for a course-change maneuver in steady
// wind, pick the constant ground-referenced flight path angle that minimizes
// the integrated squared airspeed rate from the reference airspeed, subject
// to the time-averaged tangency conditions evaluated from both envelope
// boundaries.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "glidesafe/airframe.hpp"
#include "glidesafe/dynamics.hpp"
#include "glidesafe/error.hpp"
#include "glidesafe/surrogate.hpp"
#include "glidesafe/units.hpp"
#include "glidesafe/viability.hpp"
#include "glidesafe/windframe.hpp"

namespace glidesafe {

struct Maneuver {
  double delta_course_rad = 0.0;
  WindVector wind;
  double ref_airspeed_ms = units::ms_from_kts_exact(90.0);
  double initial_course_rad = 0.0;

  void validate() const {
    if (!(std::abs(delta_course_rad) <= units::kTwoPi)) {
      throw Error(ErrorCode::kInvalidArgument, "|course change| must not exceed 360 deg");
    }
    if (!(ref_airspeed_ms > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "reference airspeed must be positive");
    }
    if (!wind.is_horizontal()) throw Error(ErrorCode::kInvalidArgument, "wind must be horizontal");
  }
};

struct HorizonParams {
  double turn_rate_rad_s = units::rad_from_deg_exact(3.0);
  double tau_s = 10.0;
  /// Upper bound on turning horizons; disabled by default.
  double cap_s = std::numeric_limits<double>::infinity();

  void validate() const {
    if (!(turn_rate_rad_s > 0.0) || !(tau_s > 0.0) || !(cap_s > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "turn rate, tau and cap must be positive");
    }
  }

  friend bool operator==(const HorizonParams&, const HorizonParams&) = default;
};

struct SurrogateParams {
  double dt_s = 0.05;
  int half_window = 5;
  /// Step of the internal simulation that feeds the surrogate.
  double sim_dt_s = 0.05;

  void validate() const {
    if (!(dt_s > 0.0) || !(sim_dt_s > 0.0) || half_window < 0) {
      throw Error(ErrorCode::kInvalidArgument, "surrogate dt must be positive and L >= 0");
    }
  }

  friend bool operator==(const SurrogateParams&, const SurrogateParams&) = default;
};

struct OptimizerParams {
  GammaInterval gamma_box{units::rad_from_deg_exact(-10.0), 0.0, false};
  int grid_points = 41;
  double margin_lo = 0.0;  // required f~(v_min) >= margin_lo
  double margin_hi = 0.0;  // required f~(v_max) <= -margin_hi
  double tolerance_rad = 1e-7;

  void validate() const {
    if (gamma_box.empty || !(gamma_box.lo_rad <= gamma_box.hi_rad)) {
      throw Error(ErrorCode::kInvalidArgument, "gamma box must be non-empty");
    }
    if (grid_points < 2) throw Error(ErrorCode::kInvalidArgument, "need at least 2 grid points");
    if (!(tolerance_rad > 0.0)) throw Error(ErrorCode::kInvalidArgument, "tolerance must be > 0");
  }

  friend bool operator==(const OptimizerParams& a, const OptimizerParams& b) {
    return a.gamma_box.lo_rad == b.gamma_box.lo_rad && a.gamma_box.hi_rad == b.gamma_box.hi_rad &&
           a.grid_points == b.grid_points && a.margin_lo == b.margin_lo &&
           a.margin_hi == b.margin_hi && a.tolerance_rad == b.tolerance_rad;
  }
};

struct GuidanceConfig {
  HorizonParams horizon;
  SurrogateParams surrogate;
  OptimizerParams optimizer;

  void validate() const {
    horizon.validate();
    surrogate.validate();
    optimizer.validate();
  }
};

/// Summary of the nominal (reference-airspeed) trajectory of a maneuver.
struct NominalSummary {
  double altitude_drop_m = 0.0;
  double north_m = 0.0;
  double east_m = 0.0;
  double ground_path_m = 0.0;
  double final_airspeed_ms = 0.0;
};

struct GuidanceSolution {
  double gamma_g_star_rad = std::numeric_limits<double>::quiet_NaN();
  double cost = std::numeric_limits<double>::quiet_NaN();
  double tangency_min = std::numeric_limits<double>::quiet_NaN();
  double tangency_max = std::numeric_limits<double>::quiet_NaN();
  bool converged = false;
  double horizon_s = 0.0;
  int feasible_grid_points = 0;
  int evaluations = 0;
  NominalSummary nominal;
  std::string diagnostics;

  /// Throws Infeasible for a non-converged solution.
  const GuidanceSolution& require_converged() const {
    if (!converged) throw Error(ErrorCode::kInfeasible, diagnostics);
    return *this;
  }
};

/// T = |dchi| / chi_dot for turns (optionally capped), tau for straight flight.
inline double horizon_s(const Maneuver& m, const HorizonParams& h) {
  if (m.delta_course_rad == 0.0) return h.tau_s;
  return std::min(std::abs(m.delta_course_rad) / h.turn_rate_rad_s, h.cap_s);
}

/// Segment command of a maneuver flown at `gamma_g_rad`: signed standard
/// rate turn for its horizon, coordinated bank at the reference airspeed.
inline SegmentCommand maneuver_command(const AircraftParams& p, const Maneuver& m,
                                       const HorizonParams& h, double gamma_g_rad) {
  SegmentCommand cmd;
  cmd.gamma_g_rad = gamma_g_rad;
  cmd.duration_s = horizon_s(m, h);
  if (m.delta_course_rad != 0.0) {
    const double rate = std::copysign(h.turn_rate_rad_s, m.delta_course_rad);
    cmd.course_change_rad =
        cmd.duration_s * h.turn_rate_rad_s >= std::abs(m.delta_course_rad)
            ? m.delta_course_rad
            : rate * cmd.duration_s;
    cmd.bank_rad = coordinated_bank(m.ref_airspeed_ms, rate, p.gravity_ms2);
  }
  return cmd;
}

/// Simulates the maneuver from airspeed v_a0 at the origin; includes the
/// initial state.
inline std::vector<SimState> simulate_maneuver(const AircraftParams& p, const Maneuver& m,
                                               const HorizonParams& h, double sim_dt_s,
                                               double gamma_g_rad, double v_a0) {
  SimState start;
  start.airspeed_ms = v_a0;
  start.course_rad = m.initial_course_rad;
  start.validate();
  const SegmentCommand cmd = maneuver_command(p, m, h, gamma_g_rad);
  std::vector<SimState> traj;
  start.gamma_g_cmd_rad = cmd.gamma_g_rad;
  start.bank_rad = cmd.bank_rad;
  start.turn_rate_rad_s = cmd.course_change_rad / cmd.duration_s;
  traj.push_back(with_air_angle(p, m.wind, start));
  integrate_segment(p, m.wind, traj.front(), cmd, sim_dt_s, traj);
  return traj;
}

/// f~ from a boundary initialization: mean airspeed rate over the horizon
/// estimated through the resample / smooth / differentiate pipeline.
inline double averaged_tangency(const AircraftParams& p, const Maneuver& m,
                                const HorizonParams& h, const SurrogateParams& s,
                                double gamma_g_rad, double v_a0) {
  const auto traj = simulate_maneuver(p, m, h, s.sim_dt_s, gamma_g_rad, v_a0);
  std::vector<TimedSample> samples;
  samples.reserve(traj.size());
  for (const auto& st : traj) samples.push_back({st.t_s, st.airspeed_ms});
  return time_averaged_rate(samples, s.dt_s, s.half_window);
}

/// Phi = integral of (v_a')^2 over the trajectory, trapezoidal in time.
inline double integrated_squared_rate(const AircraftParams& p, std::span<const SimState> traj) {
  double total = 0.0;
  double prev = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const SimState& s = traj[i];
    const double f = detail::airspeed_rate_unchecked(p, s.airspeed_ms, s.gamma_air_rad, s.bank_rad);
    const double f2 = f * f;
    if (i > 0) total += 0.5 * (f2 + prev) * (s.t_s - traj[i - 1].t_s);
    prev = f2;
  }
  return total;
}

inline NominalSummary summarize_nominal(std::span<const SimState> traj) {
  NominalSummary n;
  if (traj.empty()) return n;
  n.altitude_drop_m = traj.front().alt_m - traj.back().alt_m;
  n.north_m = traj.back().north_m - traj.front().north_m;
  n.east_m = traj.back().east_m - traj.front().east_m;
  for (std::size_t i = 1; i < traj.size(); ++i) {
    n.ground_path_m += std::hypot(traj[i].north_m - traj[i - 1].north_m,
                                  traj[i].east_m - traj[i - 1].east_m);
  }
  n.final_airspeed_ms = traj.back().airspeed_ms;
  return n;
}

/// One candidate command evaluated against cost and constraints.
struct CandidateEval {
  double gamma_g_rad = 0.0;
  bool simulated = false;  // all three simulations succeeded
  bool feasible = false;
  double cost = std::numeric_limits<double>::infinity();
  double tangency_min = std::numeric_limits<double>::quiet_NaN();
  double tangency_max = std::numeric_limits<double>::quiet_NaN();
};

inline CandidateEval evaluate_candidate(const AircraftParams& p, const AirspeedEnvelope& env,
                                        const Maneuver& m, const GuidanceConfig& cfg,
                                        double gamma_g_rad) {
  CandidateEval e;
  e.gamma_g_rad = gamma_g_rad;
  try {
    e.tangency_min = averaged_tangency(p, m, cfg.horizon, cfg.surrogate, gamma_g_rad, env.v_min_ms);
    e.tangency_max = averaged_tangency(p, m, cfg.horizon, cfg.surrogate, gamma_g_rad, env.v_max_ms);
    const auto nominal =
        simulate_maneuver(p, m, cfg.horizon, cfg.surrogate.sim_dt_s, gamma_g_rad, m.ref_airspeed_ms);
    e.cost = integrated_squared_rate(p, nominal);
    e.simulated = true;
  } catch (const Error&) {
    // Boundary trajectories that lose the wind triangle count as infeasible.
    return e;
  }
  e.feasible = e.tangency_min >= cfg.optimizer.margin_lo &&
               e.tangency_max <= -cfg.optimizer.margin_hi;
  return e;
}

/// Coarse grid over the gamma box keeping feasible candidates, then
/// golden-section refinement between the neighbours of the best one.
inline GuidanceSolution optimize_guidance(const AircraftParams& p, const AirspeedEnvelope& env,
                                          const Maneuver& m, const GuidanceConfig& cfg) {
  p.validate();
  env.validate();
  m.validate();
  cfg.validate();
  const OptimizerParams& opt = cfg.optimizer;

  GuidanceSolution sol;
  sol.horizon_s = horizon_s(m, cfg.horizon);

  const double lo = opt.gamma_box.lo_rad;
  const double hi = opt.gamma_box.hi_rad;
  const int n = opt.grid_points;
  std::vector<CandidateEval> grid;
  grid.reserve(static_cast<std::size_t>(n));
  int best = -1;
  for (int i = 0; i < n; ++i) {
    const double x = i + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    grid.push_back(evaluate_candidate(p, env, m, cfg, x));
    ++sol.evaluations;
    if (grid.back().feasible) {
      ++sol.feasible_grid_points;
      if (best < 0 || grid.back().cost < grid[static_cast<std::size_t>(best)].cost) best = i;
    }
  }

  if (best < 0) {
    // Report the candidate with the smallest combined constraint violation.
    double least = std::numeric_limits<double>::infinity();
    for (const auto& e : grid) {
      if (!e.simulated) continue;
      const double viol = std::max(0.0, opt.margin_lo - e.tangency_min) +
                          std::max(0.0, e.tangency_max + opt.margin_hi);
      if (viol < least) {
        least = viol;
        sol.gamma_g_star_rad = e.gamma_g_rad;
        sol.tangency_min = e.tangency_min;
        sol.tangency_max = e.tangency_max;
        sol.cost = e.cost;
      }
    }
    sol.diagnostics = "no feasible grid point in gamma box; least violation " + std::to_string(least) +
                      " m/s^2";
    return sol;
  }

  CandidateEval incumbent = grid[static_cast<std::size_t>(best)];
  auto consider = [&](const CandidateEval& e) {
    if (e.feasible && e.cost < incumbent.cost) incumbent = e;
  };
  auto objective = [&](double x) {
    const CandidateEval e = evaluate_candidate(p, env, m, cfg, x);
    ++sol.evaluations;
    consider(e);
    return e.feasible ? e.cost : std::numeric_limits<double>::infinity();
  };

  double a = grid[static_cast<std::size_t>(std::max(best - 1, 0))].gamma_g_rad;
  double b = grid[static_cast<std::size_t>(std::min(best + 1, n - 1))].gamma_g_rad;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = objective(c);
  double fd = objective(d);
  while (b - a > opt.tolerance_rad) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = objective(d);
    }
  }

  sol.gamma_g_star_rad = incumbent.gamma_g_rad;
  sol.cost = incumbent.cost;
  sol.tangency_min = incumbent.tangency_min;
  sol.tangency_max = incumbent.tangency_max;
  sol.converged = true;
  sol.nominal = summarize_nominal(simulate_maneuver(p, m, cfg.horizon, cfg.surrogate.sim_dt_s,
                                                    sol.gamma_g_star_rad, m.ref_airspeed_ms));
  return sol;
}

}  // namespace glidesafe
