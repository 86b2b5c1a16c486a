#pragma once

// Point-mass unpowered aerodynamics: quadratic drag polar, coordinated-turn
// lift balance and the airspeed rate f(v_a, gamma_a) that every viability
// check is built on. All quantities SI.

#include <cmath>
#include <string>

#include "glidesafe/error.hpp"
#include "glidesafe/root_finding.hpp"
#include "glidesafe/units.hpp"

namespace glidesafe {

struct AircraftParams {
  double mass_kg = 1406.0;
  double wing_area_m2 = 16.17;
  double cd0 = 0.055;
  double induced_factor_k = 0.05;
  double air_density_kgm3 = 1.225;
  double gravity_ms2 = 9.81;

  double weight_N() const { return mass_kg * gravity_ms2; }

  void validate() const {
    if (!(mass_kg > 0.0) || !(wing_area_m2 > 0.0) || !(air_density_kgm3 > 0.0) ||
        !(gravity_ms2 > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "aircraft mass, wing area, density and gravity must be positive");
    }
    if (!(cd0 >= 0.0) || !(induced_factor_k >= 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "drag polar coefficients must be non-negative");
    }
  }

  friend bool operator==(const AircraftParams&, const AircraftParams&) = default;
};

/// Engine-out light single (windmilling propeller): best glide near 71 kt.
/// This is the shipped default.
inline AircraftParams engine_out_polar() { return AircraftParams{}; }

/// Clean-configuration polar (CD0 = 0.027, k = 0.054). Minimum-drag speed
/// is about 86 kt, i.e. inside the usual 80-100 kt envelope.
inline AircraftParams clean_polar() {
  AircraftParams p;
  p.cd0 = 0.027;
  p.induced_factor_k = 0.054;
  return p;
}

struct FlightCondition {
  double airspeed_ms = 0.0;
  double gamma_air_rad = 0.0;
  double bank_rad = 0.0;

  void validate() const {
    if (!(airspeed_ms > 0.0) || !std::isfinite(airspeed_ms)) {
      throw Error(ErrorCode::kInvalidArgument, "airspeed must be positive and finite");
    }
    if (!(std::abs(bank_rad) < units::kPi / 2.0)) {
      throw Error(ErrorCode::kInvalidArgument, "|bank| must be below 90 deg");
    }
    if (!(std::abs(gamma_air_rad) <= units::kPi / 2.0)) {
      throw Error(ErrorCode::kInvalidArgument, "|gamma_a| must not exceed 90 deg");
    }
  }
};

namespace detail {

// Unchecked kernels; the simulator calls these millions of times on states
// that are validated once per step.
inline double drag_unchecked(const AircraftParams& p, double v, double gamma_a, double bank) {
  const double rho_s = p.air_density_kgm3 * p.wing_area_m2;
  const double w = p.weight_N();
  const double load = std::cos(gamma_a) / std::cos(bank);
  return 0.5 * rho_s * p.cd0 * v * v + 2.0 * p.induced_factor_k * w * w / (rho_s * v * v) * load * load;
}

inline double airspeed_rate_unchecked(const AircraftParams& p, double v, double gamma_a,
                                      double bank) {
  return -drag_unchecked(p, v, gamma_a, bank) / p.mass_kg - p.gravity_ms2 * std::sin(gamma_a);
}

}  // namespace detail

/// C_L = 2 W cos(gamma_a) / (rho S v^2 cos(mu)).
inline double lift_coefficient(const AircraftParams& p, const FlightCondition& c) {
  c.validate();
  return 2.0 * p.weight_N() * std::cos(c.gamma_air_rad) /
         (p.air_density_kgm3 * p.wing_area_m2 * c.airspeed_ms * c.airspeed_ms *
          std::cos(c.bank_rad));
}

inline double drag_N(const AircraftParams& p, const FlightCondition& c) {
  c.validate();
  return detail::drag_unchecked(p, c.airspeed_ms, c.gamma_air_rad, c.bank_rad);
}

/// v_a' = -D/m - g sin(gamma_a). Zero thrust.
inline double airspeed_rate(const AircraftParams& p, const FlightCondition& c) {
  return -drag_N(p, c) / p.mass_kg - p.gravity_ms2 * std::sin(c.gamma_air_rad);
}

/// Air-relative flight path angle at which v_a' = 0, searched in [-pi/2, 0].
inline double equilibrium_glide_angle(const AircraftParams& p, double airspeed_ms,
                                      double bank_rad) {
  FlightCondition probe{airspeed_ms, 0.0, bank_rad};
  probe.validate();
  auto rate = [&](double gamma) {
    return detail::airspeed_rate_unchecked(p, airspeed_ms, gamma, bank_rad);
  };
  auto root = detail::bisect(rate, -units::kPi / 2.0, 0.0);
  if (!root) {
    throw Error(ErrorCode::kNoEquilibrium,
                "drag exceeds weight over the whole descent bracket at v_a = " +
                    std::to_string(airspeed_ms));
  }
  return *root;
}

}  // namespace glidesafe
