#pragma once

// Viability of the airspeed interval V = [v_min, v_max] under
// v_a' = f(v_a, gamma_a): contingent cones, boundary tangency checks and the
// viable flight-path-angle interval in the air and ground frames.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "glidesafe/airframe.hpp"
#include "glidesafe/error.hpp"
#include "glidesafe/root_finding.hpp"
#include "glidesafe/windframe.hpp"

namespace glidesafe {

/// Absolute tolerance for deciding that an airspeed sits on the boundary.
inline constexpr double kBoundaryToleranceMs = 1e-9;

struct AirspeedEnvelope {
  double v_min_ms = units::ms_from_kts_exact(80.0);
  double v_max_ms = units::ms_from_kts_exact(100.0);

  void validate() const {
    if (!(v_min_ms > 0.0) || !(v_min_ms < v_max_ms) || !std::isfinite(v_max_ms)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "envelope requires 0 < v_min < v_max < inf");
    }
  }

  bool contains(double v) const { return v >= v_min_ms && v <= v_max_ms; }

  friend bool operator==(const AirspeedEnvelope&, const AirspeedEnvelope&) = default;
};

struct ConeInterval {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();

  bool contains(double eta) const { return eta >= lower && eta <= upper; }
};

struct GammaInterval {
  double lo_rad = 0.0;
  double hi_rad = 0.0;
  bool empty = false;

  bool contains(double gamma) const { return !empty && gamma >= lo_rad && gamma <= hi_rad; }
  double width() const { return empty ? 0.0 : hi_rad - lo_rad; }

  static GammaInterval make_empty(double lo, double hi) { return {lo, hi, true}; }

  GammaInterval intersect(const GammaInterval& other) const {
    if (empty || other.empty) return make_empty(lo_rad, hi_rad);
    const double lo = std::max(lo_rad, other.lo_rad);
    const double hi = std::min(hi_rad, other.hi_rad);
    return lo <= hi ? GammaInterval{lo, hi, false} : make_empty(lo, hi);
  }
};

/// Contingent cone of the interval at v_a: R inside, [0, inf) at v_min,
/// (-inf, 0] at v_max.
inline ConeInterval contingent_cone(const AirspeedEnvelope& env, double v_a) {
  env.validate();
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (v_a < env.v_min_ms - kBoundaryToleranceMs || v_a > env.v_max_ms + kBoundaryToleranceMs ||
      !std::isfinite(v_a)) {
    throw Error(ErrorCode::kOutsideEnvelope, "airspeed " + std::to_string(v_a) + " m/s");
  }
  if (std::abs(v_a - env.v_min_ms) <= kBoundaryToleranceMs) return {0.0, inf};
  if (std::abs(v_a - env.v_max_ms) <= kBoundaryToleranceMs) return {-inf, 0.0};
  return {-inf, inf};
}

/// f(v_max, gamma_a) <= 0 and f(v_min, gamma_a) >= 0.
inline bool nagumo_boundary_ok(const AircraftParams& p, const AirspeedEnvelope& env,
                               double gamma_air_rad, double bank_rad) {
  env.validate();
  const double f_max = airspeed_rate(p, {env.v_max_ms, gamma_air_rad, bank_rad});
  const double f_min = airspeed_rate(p, {env.v_min_ms, gamma_air_rad, bank_rad});
  return f_max <= 0.0 && f_min >= 0.0;
}

namespace detail {

/// Solves gamma = asin(-D(v, gamma) / W) by fixed-point iteration. Full
/// steps first; the step is halved once the iterates start to oscillate.
/// nullopt when the iteration fails to converge; throws AsinDomain when the
/// drag-to-weight ratio leaves [-1, 1].
inline std::optional<double> boundary_gamma_fixed_point(const AircraftParams& p, double v,
                                                        double bank, double tol = 1e-10,
                                                        int max_iter = 100) {
  const double w = p.weight_N();
  auto map = [&](double gamma) {
    const double ratio = drag_unchecked(p, v, gamma, bank) / w;
    if (ratio > 1.0) {
      throw Error(ErrorCode::kAsinDomain,
                  "drag exceeds weight at v = " + std::to_string(v) + " m/s");
    }
    return std::asin(-ratio);
  };
  double damping = 1.0;
  double gamma = map(0.0);
  double prev_step = 0.0;
  for (int i = 0; i < max_iter; ++i) {
    const double step = map(gamma) - gamma;
    if (std::abs(step) < tol) return gamma + step;
    if (i > 0 && step * prev_step < 0.0 && std::abs(step) >= std::abs(prev_step)) {
      damping = 0.5;
    }
    gamma += damping * step;
    prev_step = step;
  }
  return std::nullopt;
}

inline double boundary_gamma_bisection(const AircraftParams& p, double v, double bank) {
  const double w = p.weight_N();
  auto g = [&](double gamma) { return std::sin(gamma) + drag_unchecked(p, v, gamma, bank) / w; };
  auto root = bisect(g, -units::kPi / 2.0, 0.0);
  if (!root) {
    throw Error(ErrorCode::kAsinDomain, "no boundary flight path angle in [-90, 0] deg");
  }
  return *root;
}

inline double boundary_gamma(const AircraftParams& p, double v, double bank) {
  if (auto gamma = boundary_gamma_fixed_point(p, v, bank)) return *gamma;
  return boundary_gamma_bisection(p, v, bank);
}

}  // namespace detail

/// Viable air-relative flight path angles: [asin(-D(v_max)/W), asin(-D(v_min)/W)].
/// Each bound depends on itself through cos^2(gamma) inside the induced
/// drag and is solved as a fixed point. The interval is reported empty (not
/// thrown) when the envelope straddles the back side of the drag curve.
inline GammaInterval viable_gamma_air_interval(const AircraftParams& p,
                                               const AirspeedEnvelope& env, double bank_rad) {
  p.validate();
  env.validate();
  FlightCondition{env.v_min_ms, 0.0, bank_rad}.validate();
  const double lo = detail::boundary_gamma(p, env.v_max_ms, bank_rad);
  const double hi = detail::boundary_gamma(p, env.v_min_ms, bank_rad);
  if (lo > hi) return GammaInterval::make_empty(lo, hi);
  return {lo, hi, false};
}

/// Air heading that holds `course_rad` over the ground at the given air
/// speed and air-relative flight path angle.
inline double heading_for_course(double airspeed_ms, double gamma_air_rad, double course_rad,
                                 const WindVector& w) {
  const double h = airspeed_ms * std::cos(gamma_air_rad);
  const double cc = std::cos(course_rad);
  const double sc = std::sin(course_rad);
  const double along = w.north_ms * cc + w.east_ms * sc;
  const double cross = -w.north_ms * sc + w.east_ms * cc;
  if (!(h > std::abs(cross))) {
    throw Error(ErrorCode::kNoSolution, "crosswind exceeds horizontal airspeed");
  }
  const double crab = std::asin(-cross / h);
  if (!(h * std::cos(crab) + along > 0.0)) {
    throw Error(ErrorCode::kNoSolution, "no forward ground progress along course");
  }
  return course_rad + crab;
}

/// Instantaneous viable ground-referenced interval at the current airspeed
/// and course: both air-frame bounds mapped through gamma_air_to_ground.
inline GammaInterval viable_gamma_ground_interval(const AircraftParams& p,
                                                  const AirspeedEnvelope& env, double bank_rad,
                                                  double airspeed_ms, double course_rad,
                                                  const WindVector& w) {
  const GammaInterval air = viable_gamma_air_interval(p, env, bank_rad);
  if (air.empty) {
    throw Error(ErrorCode::kEmptyInterval, "viable air-relative interval is empty");
  }
  auto project = [&](double gamma_a) {
    const AirState a{heading_for_course(airspeed_ms, gamma_a, course_rad, w), gamma_a,
                     airspeed_ms};
    return gamma_air_to_ground(gamma_a, a, w);
  };
  return {project(air.lo_rad), project(air.hi_rad), false};
}

}  // namespace glidesafe
