#pragma once

#include <cmath>
#include <optional>

namespace glidesafe::detail {

/// Bisection on [lo, hi] for a continuous fn with a sign change. Runs until
/// the bracket stops shrinking in floating point or max_iter is reached.
/// Returns nullopt when fn(lo) and fn(hi) share a strict sign.
template <typename Fn>
std::optional<double> bisect(Fn&& fn, double lo, double hi, int max_iter = 200) {
  double flo = fn(lo);
  double fhi = fn(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) return std::nullopt;
  for (int i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fmid = fn(mid);
    if (fmid == 0.0) return mid;
    if ((fmid > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  // Prefer the endpoint with the smaller residual.
  return std::abs(fn(lo)) <= std::abs(fn(hi)) ? lo : hi;
}

}  // namespace glidesafe::detail
