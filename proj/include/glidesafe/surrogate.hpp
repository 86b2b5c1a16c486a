#pragma once

// Numerical surrogate for the time-averaged tangency condition: resample a
// simulated airspeed history onto a uniform grid, smooth it, differentiate
// it and take the discrete mean.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "glidesafe/error.hpp"

namespace glidesafe {

struct TimedSample {
  double t = 0.0;
  double value = 0.0;
};

/// Linear interpolation of `samples` onto tau_k = t0 + k dt with
/// tau_K <= t_end. Samples must be sorted by time.
inline std::vector<TimedSample> resample_uniform(std::span<const TimedSample> samples,
                                                 double dt_s) {
  if (samples.size() < 2) {
    throw Error(ErrorCode::kInsufficientSamples, "resampling needs at least two samples");
  }
  if (!(dt_s > 0.0)) throw Error(ErrorCode::kInvalidArgument, "dt must be positive");
  const double t0 = samples.front().t;
  const double span_s = samples.back().t - t0;
  if (!(span_s > 0.0)) {
    throw Error(ErrorCode::kInsufficientSamples, "samples cover no time");
  }
  const auto count = static_cast<std::size_t>(std::floor(span_s / dt_s + 1e-9)) + 1;

  std::vector<TimedSample> out;
  out.reserve(count);
  std::size_t seg = 0;
  for (std::size_t k = 0; k < count; ++k) {
    const double tau = t0 + static_cast<double>(k) * dt_s;
    while (seg + 2 < samples.size() && samples[seg + 1].t < tau) ++seg;
    const TimedSample& a = samples[seg];
    const TimedSample& b = samples[seg + 1];
    double value;
    if (tau <= a.t) {
      value = a.value;
    } else if (tau >= b.t) {
      value = b.value;
    } else {
      const double s = (tau - a.t) / (b.t - a.t);
      value = a.value + s * (b.value - a.value);
    }
    out.push_back({tau, value});
  }
  return out;
}

/// Centered moving average with half-width L. Near the ends the window is
/// shrunk symmetrically, so the first and last values pass through.
inline std::vector<double> moving_average(std::span<const double> values, int half_window) {
  if (half_window < 0) throw Error(ErrorCode::kInvalidArgument, "half window must be >= 0");
  const auto n = static_cast<long>(values.size());
  std::vector<double> out(values.size());
  for (long k = 0; k < n; ++k) {
    const long h = std::min<long>({half_window, k, n - 1 - k});
    double sum = 0.0;
    for (long j = -h; j <= h; ++j) sum += values[static_cast<std::size_t>(k + j)];
    out[static_cast<std::size_t>(k)] = sum / static_cast<double>(2 * h + 1);
  }
  return out;
}

/// Central differences in the interior, one-sided first-order at the ends.
inline std::vector<double> central_difference(std::span<const double> values, double dt_s) {
  if (values.size() < 3) {
    throw Error(ErrorCode::kInsufficientSamples, "central difference needs at least three samples");
  }
  if (!(dt_s > 0.0)) throw Error(ErrorCode::kInvalidArgument, "dt must be positive");
  const std::size_t n = values.size();
  std::vector<double> out(n);
  out[0] = (values[1] - values[0]) / dt_s;
  for (std::size_t k = 1; k + 1 < n; ++k) out[k] = (values[k + 1] - values[k - 1]) / (2.0 * dt_s);
  out[n - 1] = (values[n - 1] - values[n - 2]) / dt_s;
  return out;
}

/// (1/K) sum_{k=0}^{K-1} rates[k] for K + 1 grid points.
inline double discrete_mean_rate(std::span<const double> rates) {
  if (rates.size() < 2) throw Error(ErrorCode::kInsufficientSamples, "need K >= 1");
  const std::size_t k_count = rates.size() - 1;
  double sum = 0.0;
  for (std::size_t k = 0; k < k_count; ++k) sum += rates[k];
  return sum / static_cast<double>(k_count);
}

/// Full pipeline: resample -> smooth -> differentiate -> mean.
inline double time_averaged_rate(std::span<const TimedSample> samples, double dt_s,
                                 int half_window) {
  const auto grid = resample_uniform(samples, dt_s);
  std::vector<double> values;
  values.reserve(grid.size());
  for (const auto& s : grid) values.push_back(s.value);
  const auto smooth = moving_average(values, half_window);
  const auto rates = central_difference(smooth, dt_s);
  return discrete_mean_rate(rates);
}

}  // namespace glidesafe
