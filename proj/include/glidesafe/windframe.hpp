#pragma once

// Steady-wind frame coupling. Vectors are NED (north, east, down); flight
// path angles are positive up, so v_down = -v sin(gamma). Course and heading
// are measured clockwise from north. Wind direction follows the
// meteorological convention: the direction the wind blows FROM.

#include <algorithm>
#include <cmath>

#include "glidesafe/error.hpp"
#include "glidesafe/units.hpp"

namespace glidesafe {

struct Vec3 {
  double north = 0.0;
  double east = 0.0;
  double down = 0.0;

  double norm() const { return std::sqrt(north * north + east * east + down * down); }
  double horizontal_norm() const { return std::hypot(north, east); }

  friend Vec3 operator+(const Vec3& a, const Vec3& b) {
    return {a.north + b.north, a.east + b.east, a.down + b.down};
  }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {a.north - b.north, a.east - b.east, a.down - b.down};
  }
};

struct WindVector {
  double north_ms = 0.0;
  double east_ms = 0.0;
  double down_ms = 0.0;

  static WindVector horizontal(double north_ms, double east_ms) {
    return WindVector{north_ms, east_ms, 0.0};
  }

  /// speed with meteorological "from" direction; a northerly (from 0 deg)
  /// wind blows toward the south.
  static WindVector from_meteorological(double speed_ms, double from_rad) {
    return horizontal(-speed_ms * std::cos(from_rad), -speed_ms * std::sin(from_rad));
  }

  double speed_ms() const { return std::hypot(north_ms, east_ms); }

  /// Meteorological from-direction in [-pi, pi); 0 for calm air.
  double from_direction_rad() const {
    if (speed_ms() == 0.0) return 0.0;
    return units::wrap_pi(std::atan2(-east_ms, -north_ms));
  }

  bool is_horizontal() const { return down_ms == 0.0; }

  Vec3 as_vec() const { return {north_ms, east_ms, down_ms}; }

  /// Same wind expressed relative to a vehicle course, i.e. the wind seen in
  /// a frame rotated so the course points north.
  WindVector relative_to_course(double course_rad) const {
    return from_meteorological(speed_ms(), units::wrap_pi(from_direction_rad() - course_rad));
  }

  friend bool operator==(const WindVector&, const WindVector&) = default;
};

struct AirState {
  double heading_rad = 0.0;
  double gamma_air_rad = 0.0;
  double airspeed_ms = 0.0;

  Vec3 velocity() const {
    const double h = airspeed_ms * std::cos(gamma_air_rad);
    return {h * std::cos(heading_rad), h * std::sin(heading_rad),
            -airspeed_ms * std::sin(gamma_air_rad)};
  }
};

struct GroundState {
  double course_rad = 0.0;
  double gamma_ground_rad = 0.0;
  double groundspeed_ms = 0.0;
};

/// Result of solving the wind triangle for a ground-referenced command.
struct AirSolution {
  double gamma_air_rad = 0.0;
  double groundspeed_ms = 0.0;
  double heading_rad = 0.0;
};

/// v_g = v_a + v_w.
inline Vec3 compose_ground_velocity(const AirState& a, const WindVector& w) {
  return a.velocity() + w.as_vec();
}

/// Maps an air-relative flight path angle to the ground-referenced one for
/// the given air velocity direction and wind. Works for non-horizontal wind
/// too, using v_g = v_a + v_w for the vertical component.
inline double gamma_air_to_ground(double gamma_air_rad, const AirState& a, const WindVector& w) {
  AirState air = a;
  air.gamma_air_rad = gamma_air_rad;
  const Vec3 vg = compose_ground_velocity(air, w);
  const double speed = vg.norm();
  if (!(speed > 1e-12)) {
    throw Error(ErrorCode::kDegenerateVelocity, "ground velocity vanishes");
  }
  const double up = air.airspeed_ms * std::sin(gamma_air_rad) - w.down_ms;
  return std::asin(std::clamp(up / speed, -1.0, 1.0));
}

namespace detail {

enum class TriangleStatus { kOk, kNoSolution, kAmbiguous };

/// Closed-form wind triangle for horizontal wind. With u the unit ground
/// velocity direction, |v_g u - w| = v_a is a quadratic in v_g:
///   v_g^2 - 2 (u.w) v_g + |w|^2 - v_a^2 = 0.
/// For v_a > |w| exactly one root is positive.
inline TriangleStatus solve_triangle(double gamma_g, double airspeed, double course,
                                     double wind_n, double wind_e, AirSolution& out) {
  const double cg = std::cos(gamma_g);
  const double sg = std::sin(gamma_g);
  const double cc = std::cos(course);
  const double sc = std::sin(course);
  const double uw = cg * (cc * wind_n + sc * wind_e);
  const double w2 = wind_n * wind_n + wind_e * wind_e;
  const double a2 = airspeed * airspeed;
  const double disc = uw * uw - w2 + a2;
  if (!(disc >= 0.0)) return TriangleStatus::kNoSolution;
  const double root = std::sqrt(disc);
  // Vieta form of the larger root avoids cancellation when uw < 0.
  double vg;
  if (uw >= 0.0) {
    vg = uw + root;
  } else {
    const double denom = root - uw;
    if (!(denom > 0.0)) return TriangleStatus::kNoSolution;
    vg = (a2 - w2) / denom;
  }
  if (!(vg > 0.0)) return TriangleStatus::kNoSolution;
  const double other = uw - root;
  if (other > 0.0) return TriangleStatus::kAmbiguous;

  const double horiz = vg * cg;
  out.groundspeed_ms = vg;
  out.gamma_air_rad = std::asin(std::clamp(vg * sg / airspeed, -1.0, 1.0));
  out.heading_rad = std::atan2(horiz * sc - wind_e, horiz * cc - wind_n);
  return TriangleStatus::kOk;
}

}  // namespace detail

/// Recovers the air-relative state that flies a ground-referenced flight
/// path angle along a course at the given airspeed. Horizontal wind only.
inline AirSolution gamma_ground_to_air(double gamma_ground_rad, double airspeed_ms,
                                       double course_rad, const WindVector& w) {
  if (!w.is_horizontal()) {
    throw Error(ErrorCode::kInvalidArgument, "wind must be horizontal");
  }
  if (!(airspeed_ms > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "airspeed must be positive");
  }
  AirSolution sol;
  switch (detail::solve_triangle(gamma_ground_rad, airspeed_ms, course_rad, w.north_ms,
                                 w.east_ms, sol)) {
    case detail::TriangleStatus::kOk:
      return sol;
    case detail::TriangleStatus::kAmbiguous:
      throw Error(ErrorCode::kAmbiguousSolution,
                  "two ground speeds fly this course; airspeed below wind speed");
    case detail::TriangleStatus::kNoSolution:
      break;
  }
  throw Error(ErrorCode::kNoSolution, "wind too strong to hold the commanded course");
}

struct TriangleResiduals {
  double vertical = 0.0;    // v_a sin(gamma_a) - v_g sin(gamma_g)  [m/s]
  double horizontal = 0.0;  // (v_a cos gamma_a)^2 - |v_g,h - w|^2   [m^2/s^2]
};

/// Residuals of the two governing wind-triangle equations.
inline TriangleResiduals triangle_residuals(double gamma_ground_rad, double airspeed_ms,
                                            double course_rad, const WindVector& w,
                                            const AirSolution& s) {
  const double vw = w.speed_ms();
  // Direction the wind blows toward.
  const double toward = vw > 0.0 ? std::atan2(w.east_ms, w.north_ms) : 0.0;
  const double gh = s.groundspeed_ms * std::cos(gamma_ground_rad);
  const double ah = airspeed_ms * std::cos(s.gamma_air_rad);
  TriangleResiduals r;
  r.vertical = airspeed_ms * std::sin(s.gamma_air_rad) -
               s.groundspeed_ms * std::sin(gamma_ground_rad);
  r.horizontal = ah * ah - (gh * gh - 2.0 * gh * vw * std::cos(course_rad - toward) + vw * vw);
  return r;
}

}  // namespace glidesafe
