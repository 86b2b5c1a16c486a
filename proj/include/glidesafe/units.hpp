#pragma once

#include <cmath>
#include <numbers>

namespace glidesafe::units {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// International knot, exact by definition.
inline constexpr double kMsPerKnot = 1852.0 / 3600.0;

constexpr double kts_to_ms(double kts) { return kts * kMsPerKnot; }
constexpr double ms_to_kts(double ms) { return ms / kMsPerKnot; }
constexpr double deg_to_rad(double deg) { return deg * (kPi / 180.0); }
constexpr double rad_to_deg(double rad) { return rad * (180.0 / kPi); }

/// Wraps an angle into [-pi, pi).
inline double wrap_pi(double rad) {
  double a = std::fmod(rad + kPi, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  double out = a - kPi;
  // fmod can land exactly on +pi after the shift for inputs just below -pi.
  return out >= kPi ? out - kTwoPi : out;
}

/// Unsigned angular distance on the circle, in [0, pi].
inline double circular_distance(double a, double b) {
  return std::abs(wrap_pi(a - b));
}

/// Returns x such that forward(x) == y bit-exactly, starting from the
/// naive inverse and walking ulps. Falls back to the naive inverse when y is
/// not in the image of forward (it always is when y came from forward).
template <typename Fwd, typename Inv>
double exact_preimage(double y, Fwd forward, Inv inverse) {
  const double x0 = inverse(y);
  if (forward(x0) == y) return x0;
  double lo = x0, hi = x0;
  for (int i = 0; i < 8; ++i) {
    lo = std::nextafter(lo, -INFINITY);
    hi = std::nextafter(hi, INFINITY);
    if (forward(lo) == y) return lo;
    if (forward(hi) == y) return hi;
  }
  return x0;
}

inline double rad_from_deg_exact(double deg) {
  return exact_preimage(deg, rad_to_deg, deg_to_rad);
}

inline double ms_from_kts_exact(double kts) {
  return exact_preimage(kts, ms_to_kts, kts_to_ms);
}

}  // namespace glidesafe::units
