#pragma once

// Airspeed forward-invariance statistics over a set of trajectories.

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "json.hpp"

#include "glidesafe/dynamics.hpp"
#include "glidesafe/error.hpp"
#include "glidesafe/units.hpp"
#include "glidesafe/viability.hpp"

namespace glidesafe {

struct HistogramSpec {
  int bins = 50;
  double lo_kts = std::numeric_limits<double>::quiet_NaN();  // NaN: v_min - 2 kt
  double hi_kts = std::numeric_limits<double>::quiet_NaN();  // NaN: v_max + 2 kt
};

struct InvarianceReport {
  double v_min_observed_ms = 0.0;
  double v_max_observed_ms = 0.0;
  double mean_ms = 0.0;
  double stddev_ms = 0.0;
  std::size_t samples = 0;
  std::size_t trajectories = 0;
  std::size_t violation_count = 0;
  std::vector<double> bin_edges_kts;
  std::vector<std::size_t> counts;  // samples outside the histogram range are not binned
  double total_sim_time_s = 0.0;
  AirspeedEnvelope envelope;

  bool certified() const { return violation_count == 0; }
};

/// Aggregates every sample of every trajectory. Statistics use a two-pass
/// mean/variance (population standard deviation).
inline InvarianceReport analyze(std::span<const std::vector<SimState>> trajectories,
                                const AirspeedEnvelope& env, const HistogramSpec& hist = {}) {
  env.validate();
  std::size_t n = 0;
  for (const auto& t : trajectories) n += t.size();
  if (n == 0) throw Error(ErrorCode::kEmptyInput, "no trajectory samples to analyze");
  if (hist.bins <= 0) throw Error(ErrorCode::kInvalidArgument, "histogram needs at least one bin");

  InvarianceReport r;
  r.envelope = env;
  r.samples = n;
  r.trajectories = trajectories.size();
  r.v_min_observed_ms = std::numeric_limits<double>::infinity();
  r.v_max_observed_ms = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (const auto& t : trajectories) {
    for (const SimState& s : t) {
      sum += s.airspeed_ms;
      r.v_min_observed_ms = std::min(r.v_min_observed_ms, s.airspeed_ms);
      r.v_max_observed_ms = std::max(r.v_max_observed_ms, s.airspeed_ms);
      if (s.airspeed_ms < env.v_min_ms || s.airspeed_ms > env.v_max_ms) ++r.violation_count;
    }
    if (t.size() > 1) r.total_sim_time_s += t.back().t_s - t.front().t_s;
  }
  r.mean_ms = sum / static_cast<double>(n);
  double sq = 0.0;
  for (const auto& t : trajectories) {
    for (const SimState& s : t) sq += (s.airspeed_ms - r.mean_ms) * (s.airspeed_ms - r.mean_ms);
  }
  r.stddev_ms = std::sqrt(sq / static_cast<double>(n));

  const double lo = std::isnan(hist.lo_kts) ? units::ms_to_kts(env.v_min_ms) - 2.0 : hist.lo_kts;
  const double hi = std::isnan(hist.hi_kts) ? units::ms_to_kts(env.v_max_ms) + 2.0 : hist.hi_kts;
  if (!(hi > lo)) throw Error(ErrorCode::kInvalidArgument, "histogram range is empty");
  r.bin_edges_kts.resize(static_cast<std::size_t>(hist.bins) + 1);
  for (int i = 0; i <= hist.bins; ++i) {
    r.bin_edges_kts[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / hist.bins;
  }
  r.counts.assign(static_cast<std::size_t>(hist.bins), 0);
  for (const auto& t : trajectories) {
    for (const SimState& s : t) {
      const double v = units::ms_to_kts(s.airspeed_ms);
      if (v < lo || v > hi) continue;
      auto bin = static_cast<std::size_t>((v - lo) / (hi - lo) * hist.bins);
      if (bin >= r.counts.size()) bin = r.counts.size() - 1;
      ++r.counts[bin];
    }
  }
  return r;
}

inline nlohmann::json report_to_json(const InvarianceReport& r) {
  using units::ms_to_kts;
  return {{"samples", r.samples},
          {"trajectories", r.trajectories},
          {"total_sim_time_s", r.total_sim_time_s},
          {"v_min_observed_ms", r.v_min_observed_ms},
          {"v_max_observed_ms", r.v_max_observed_ms},
          {"mean_ms", r.mean_ms},
          {"stddev_ms", r.stddev_ms},
          {"v_min_observed_kts", ms_to_kts(r.v_min_observed_ms)},
          {"v_max_observed_kts", ms_to_kts(r.v_max_observed_ms)},
          {"mean_kts", ms_to_kts(r.mean_ms)},
          {"stddev_kts", ms_to_kts(r.stddev_ms)},
          {"envelope_kts", {ms_to_kts(r.envelope.v_min_ms), ms_to_kts(r.envelope.v_max_ms)}},
          {"violation_count", r.violation_count},
          {"certified", r.certified()},
          {"histogram", {{"bin_edges_kts", r.bin_edges_kts}, {"counts", r.counts}}}};
}

}  // namespace glidesafe
