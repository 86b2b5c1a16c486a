#pragma once

// 3-DoF point-mass glide dynamics under steady horizontal wind with a
// constant ground-referenced flight path angle command and a constant
// course rate. Integrated with classical fixed-step RK4.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "glidesafe/airframe.hpp"
#include "glidesafe/error.hpp"
#include "glidesafe/windframe.hpp"

namespace glidesafe {

struct SimState {
  double t_s = 0.0;
  double north_m = 0.0;
  double east_m = 0.0;
  double alt_m = 0.0;
  double airspeed_ms = 0.0;
  double course_rad = 0.0;  // unwrapped
  double gamma_g_cmd_rad = 0.0;
  double bank_rad = 0.0;
  double turn_rate_rad_s = 0.0;  // signed course rate command
  double gamma_air_rad = 0.0;    // derived from the wind triangle at this state

  void validate() const {
    if (!(airspeed_ms > 0.0)) {
      throw Error(ErrorCode::kNonFiniteState, "airspeed must stay positive");
    }
    if (!std::isfinite(t_s) || !std::isfinite(north_m) || !std::isfinite(east_m) ||
        !std::isfinite(alt_m) || !std::isfinite(airspeed_ms) || !std::isfinite(course_rad)) {
      throw Error(ErrorCode::kNonFiniteState, "state has non-finite components");
    }
  }
};

/// Bank angle of a coordinated turn at `turn_rate` flown at `airspeed`.
inline double coordinated_bank(double airspeed_ms, double turn_rate_rad_s, double gravity_ms2) {
  return std::atan(airspeed_ms * turn_rate_rad_s / gravity_ms2);
}

namespace detail {

struct StateRates {
  double north = 0.0;
  double east = 0.0;
  double alt = 0.0;
  double airspeed = 0.0;
};

/// Per-segment constants of the right-hand side. The wind triangle is the
/// closed-form quadratic of solve_triangle with sin/cos of the command
/// hoisted out; only the course trig varies within a segment.
class SegmentKernel {
 public:
  SegmentKernel(const AircraftParams& p, const WindVector& w, double gamma_g, double bank)
      : wn_(w.north_ms),
        we_(w.east_ms),
        w2_(w.north_ms * w.north_ms + w.east_ms * w.east_ms),
        cg_(std::cos(gamma_g)),
        sg_(std::sin(gamma_g)),
        parasite_(0.5 * p.air_density_kgm3 * p.wing_area_m2 * p.cd0),
        induced_(2.0 * p.induced_factor_k * p.weight_N() * p.weight_N() /
                 (p.air_density_kgm3 * p.wing_area_m2 * std::cos(bank) * std::cos(bank))),
        inv_mass_(1.0 / p.mass_kg),
        g_(p.gravity_ms2) {}

  /// Rates at airspeed v and course with cosine cc and sine sc. False when
  /// the wind triangle has no unique solution.
  bool rates(double v, double cc, double sc, StateRates& out, double* sin_gamma_air = nullptr) const {
    if (!(v > 0.0)) return false;
    const double uw = cg_ * (cc * wn_ + sc * we_);
    const double a2 = v * v;
    const double disc = uw * uw - w2_ + a2;
    if (!(disc >= 0.0)) return false;
    const double root = std::sqrt(disc);
    double vg;
    if (uw >= 0.0) {
      vg = uw + root;
    } else {
      const double denom = root - uw;
      if (!(denom > 0.0)) return false;
      vg = (a2 - w2_) / denom;
    }
    if (!(vg > 0.0) || uw - root > 0.0) return false;
    const double vz = vg * sg_;
    const double sga = std::clamp(vz / v, -1.0, 1.0);
    const double cga2 = 1.0 - sga * sga;
    const double drag = parasite_ * a2 + induced_ * cga2 / a2;
    const double horiz = vg * cg_;
    out.north = horiz * cc;
    out.east = horiz * sc;
    out.alt = vz;
    out.airspeed = -drag * inv_mass_ - g_ * sga;
    if (sin_gamma_air) *sin_gamma_air = sga;
    return true;
  }

 private:
  double wn_, we_, w2_, cg_, sg_, parasite_, induced_, inv_mass_, g_;
};

[[noreturn]] inline void throw_triangle_failure(const SimState& s) {
  throw Error(ErrorCode::kWindTriangleFailure,
              "no wind triangle at t = " + std::to_string(s.t_s) +
                  " s, v_a = " + std::to_string(s.airspeed_ms) + " m/s");
}

/// RK4 step with precomputed course trig at the start, midpoint and end.
inline SimState rk4_step(const SegmentKernel& kernel, const SimState& s, double dt, double c0,
                         double s0, double cm, double sm, double c1, double s1) {
  StateRates k1, k2, k3, k4;
  if (!kernel.rates(s.airspeed_ms, c0, s0, k1) ||
      !kernel.rates(s.airspeed_ms + 0.5 * dt * k1.airspeed, cm, sm, k2) ||
      !kernel.rates(s.airspeed_ms + 0.5 * dt * k2.airspeed, cm, sm, k3) ||
      !kernel.rates(s.airspeed_ms + dt * k3.airspeed, c1, s1, k4)) {
    throw_triangle_failure(s);
  }
  SimState next = s;
  const double c = dt / 6.0;
  next.t_s = s.t_s + dt;
  next.north_m += c * (k1.north + 2.0 * k2.north + 2.0 * k3.north + k4.north);
  next.east_m += c * (k1.east + 2.0 * k2.east + 2.0 * k3.east + k4.east);
  next.alt_m += c * (k1.alt + 2.0 * k2.alt + 2.0 * k3.alt + k4.alt);
  next.airspeed_ms += c * (k1.airspeed + 2.0 * k2.airspeed + 2.0 * k3.airspeed + k4.airspeed);
  next.course_rad = s.course_rad + s.turn_rate_rad_s * dt;
  return next;
}

inline void fill_air_angle(const SegmentKernel& kernel, SimState& s, double cc, double sc) {
  StateRates r;
  double sga = 0.0;
  if (!kernel.rates(s.airspeed_ms, cc, sc, r, &sga)) throw_triangle_failure(s);
  s.gamma_air_rad = std::asin(sga);
}

}  // namespace detail

/// Fills in gamma_air_rad for the command carried by the state.
inline SimState with_air_angle(const AircraftParams& p, const WindVector& w, SimState s) {
  const detail::SegmentKernel kernel(p, w, s.gamma_g_cmd_rad, s.bank_rad);
  detail::fill_air_angle(kernel, s, std::cos(s.course_rad), std::sin(s.course_rad));
  return s;
}

/// One RK4 step of length dt. The course is advanced analytically at the
/// commanded rate.
inline SimState step(const AircraftParams& p, const WindVector& w, const SimState& s, double dt) {
  if (!w.is_horizontal()) throw Error(ErrorCode::kInvalidArgument, "wind must be horizontal");
  if (!(dt > 0.0)) throw Error(ErrorCode::kInvalidArgument, "dt must be positive");
  s.validate();
  const detail::SegmentKernel kernel(p, w, s.gamma_g_cmd_rad, s.bank_rad);
  const double chi = s.course_rad;
  const double rate = s.turn_rate_rad_s;
  const double mid = chi + 0.5 * dt * rate;
  const double end = chi + dt * rate;
  SimState next = detail::rk4_step(kernel, s, dt, std::cos(chi), std::sin(chi), std::cos(mid),
                                   std::sin(mid), std::cos(end), std::sin(end));
  next.validate();
  detail::fill_air_angle(kernel, next, std::cos(end), std::sin(end));
  return next;
}

/// Command held for one maneuver segment.
struct SegmentCommand {
  double gamma_g_rad = 0.0;
  double course_change_rad = 0.0;
  double duration_s = 0.0;
  double bank_rad = 0.0;
};

/// Integrates one constant-command segment from `start` and appends the
/// samples after `start` to `out`. The final sample lands exactly on
/// start.t + duration with course exactly start.course + course_change.
inline void integrate_segment(const AircraftParams& p, const WindVector& w, const SimState& start,
                              const SegmentCommand& cmd, double dt, std::vector<SimState>& out) {
  if (!w.is_horizontal()) throw Error(ErrorCode::kInvalidArgument, "wind must be horizontal");
  if (!(dt > 0.0)) throw Error(ErrorCode::kInvalidArgument, "dt must be positive");
  if (!(cmd.duration_s > 0.0)) throw Error(ErrorCode::kInvalidArgument, "duration must be positive");
  const auto steps = static_cast<long>(std::ceil(cmd.duration_s / dt - 1e-9));
  const detail::SegmentKernel kernel(p, w, cmd.gamma_g_rad, cmd.bank_rad);
  const double rate = cmd.course_change_rad / cmd.duration_s;
  const bool turning = rate != 0.0;

  SimState s = start;
  s.validate();
  s.gamma_g_cmd_rad = cmd.gamma_g_rad;
  s.bank_rad = cmd.bank_rad;
  s.turn_rate_rad_s = rate;
  double c0 = std::cos(s.course_rad);
  double s0 = std::sin(s.course_rad);
  out.reserve(out.size() + static_cast<std::size_t>(steps));
  for (long i = 0; i < steps; ++i) {
    const bool last = i + 1 == steps;
    const double t_next = last ? start.t_s + cmd.duration_s
                               : start.t_s + static_cast<double>(i + 1) * dt;
    const double h = t_next - s.t_s;
    const double chi_next = last ? start.course_rad + cmd.course_change_rad
                                 : start.course_rad + rate * (t_next - start.t_s);
    double cm = c0, sm = s0, c1 = c0, s1 = s0;
    if (turning) {
      const double chi_mid = s.course_rad + 0.5 * h * rate;
      cm = std::cos(chi_mid);
      sm = std::sin(chi_mid);
      c1 = std::cos(chi_next);
      s1 = std::sin(chi_next);
    }
    s = detail::rk4_step(kernel, s, h, c0, s0, cm, sm, c1, s1);
    // Re-anchor time and course to avoid accumulated rounding.
    s.t_s = t_next;
    s.course_rad = chi_next;
    s.validate();
    detail::fill_air_angle(kernel, s, c1, s1);
    out.push_back(s);
    c0 = c1;
    s0 = s1;
  }
}

}  // namespace glidesafe
