#pragma once

// Best-first (A*) search over primitive concatenations. States are the full
// simulated vehicle state; duplicate detection rounds position to square
// cells and course to the table's course-change lattice.

#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <unordered_set>
#include <vector>

#include "glidesafe/dynamics.hpp"
#include "glidesafe/error.hpp"
#include "glidesafe/primitives.hpp"
#include "glidesafe/simulator.hpp"
#include "glidesafe/units.hpp"
#include "glidesafe/windframe.hpp"

namespace glidesafe {

struct GoalRegion {
  double north_m = 0.0;
  double east_m = 0.0;
  double radius_m = 100.0;

  double distance(double n, double e) const { return std::hypot(n - north_m, e - east_m); }
  bool contains(double n, double e) const { return distance(n, e) <= radius_m; }
};

struct PlanProblem {
  SimState start;
  GoalRegion goal;
  WindVector wind;
  const PrimitiveTable* table = nullptr;
  double cell_m = 50.0;
  double altitude_floor_m = 0.0;
  double sim_dt_s = 0.05;
  std::size_t max_expansions = 200000;

  void validate() const {
    if (table == nullptr) throw Error(ErrorCode::kInvalidArgument, "plan problem has no table");
    if (!(goal.radius_m > 0.0)) throw Error(ErrorCode::kInvalidArgument, "goal radius must be positive");
    if (!(cell_m > 0.0) || !(sim_dt_s > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "cell size and dt must be positive");
    }
    if (!wind.is_horizontal()) throw Error(ErrorCode::kInvalidArgument, "wind must be horizontal");
    start.validate();
  }
};

struct Plan {
  std::vector<double> delta_course_deg;
  std::vector<Primitive> primitives;
  double cost_s = 0.0;        // sum of horizons
  SimState predicted_end;     // endpoint at the planner's dt
  std::size_t expansions = 0;
};

namespace detail {

/// Smallest nonzero |course change| of the grid, deg; 360 when the grid
/// only flies straight.
inline double course_lattice_deg(const ManeuverGrid& grid) {
  double step = 360.0;
  for (double d : grid.delta_course_deg) {
    if (d != 0.0) step = std::min(step, std::abs(d));
  }
  return step;
}

struct NodeKey {
  std::int64_t n = 0;
  std::int64_t e = 0;
  std::int64_t course = 0;
  friend bool operator==(const NodeKey&, const NodeKey&) = default;
};

struct NodeKeyHash {
  std::size_t operator()(const NodeKey& k) const {
    std::uint64_t h = static_cast<std::uint64_t>(k.n) * 0x9E3779B97F4A7C15ULL;
    h ^= static_cast<std::uint64_t>(k.e) + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
    h ^= static_cast<std::uint64_t>(k.course) + 0x94D049BB133111EBULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

}  // namespace detail

/// Finds a primitive sequence whose simulated end lies in the goal region,
/// minimizing total flight time. Throws NoPath when the reachable set above
/// the altitude floor (or the expansion budget) is exhausted.
inline Plan plan(const PlanProblem& problem) {
  problem.validate();
  const PrimitiveTable& table = *problem.table;
  const AircraftParams& p = table.config.aircraft;
  const HorizonParams& hp = table.config.guidance.horizon;

  const double lattice_rad = units::deg_to_rad(detail::course_lattice_deg(table.grid));
  const auto lattice_n = static_cast<std::int64_t>(std::llround(units::kTwoPi / lattice_rad));
  auto key_of = [&](const SimState& s) {
    std::int64_t c = std::llround(s.course_rad / lattice_rad) % lattice_n;
    if (c < 0) c += lattice_n;
    return detail::NodeKey{static_cast<std::int64_t>(std::floor(s.north_m / problem.cell_m)),
                           static_cast<std::int64_t>(std::floor(s.east_m / problem.cell_m)), c};
  };
  // Horizontal ground speed never exceeds v_max + |w| inside the envelope.
  const double speed_bound = table.config.envelope.v_max_ms + problem.wind.speed_ms();
  auto heuristic = [&](const SimState& s) {
    return std::max(0.0, problem.goal.distance(s.north_m, s.east_m) - problem.goal.radius_m) /
           speed_bound;
  };

  struct Node {
    SimState state;
    double g = 0.0;
    std::int64_t parent = -1;
    const Primitive* prim = nullptr;
  };
  struct OpenItem {
    double f;
    std::uint64_t order;
    std::size_t node;
    bool operator>(const OpenItem& o) const { return f != o.f ? f > o.f : order > o.order; }
  };

  std::vector<Node> nodes;
  std::priority_queue<OpenItem, std::vector<OpenItem>, std::greater<>> open;
  std::unordered_set<detail::NodeKey, detail::NodeKeyHash> closed;
  std::uint64_t order = 0;

  nodes.push_back({problem.start, 0.0, -1, nullptr});
  open.push({heuristic(problem.start), order++, 0});

  std::vector<SimState> scratch;
  std::size_t expansions = 0;
  while (!open.empty()) {
    const OpenItem item = open.top();
    open.pop();
    const Node current = nodes[item.node];
    if (problem.goal.contains(current.state.north_m, current.state.east_m)) {
      Plan out;
      out.cost_s = current.g;
      out.predicted_end = current.state;
      out.expansions = expansions;
      for (auto i = static_cast<std::int64_t>(item.node); nodes[i].parent >= 0; i = nodes[i].parent) {
        out.primitives.insert(out.primitives.begin(), *nodes[i].prim);
        out.delta_course_deg.insert(out.delta_course_deg.begin(), nodes[i].prim->delta_course_deg);
      }
      return out;
    }
    if (!closed.insert(key_of(current.state)).second) continue;
    if (++expansions > problem.max_expansions) break;

    for (double dchi : table.grid.delta_course_deg) {
      const Primitive* prim = nullptr;
      try {
        prim = &lookup_for_course(table, units::deg_to_rad(dchi), problem.wind,
                                  current.state.course_rad);
      } catch (const Error&) {
        continue;
      }
      scratch.clear();
      try {
        run_primitive(p, hp, problem.wind, current.state, *prim, problem.sim_dt_s, scratch);
      } catch (const Error&) {
        continue;
      }
      const SimState& end = scratch.back();
      if (end.alt_m < problem.altitude_floor_m) continue;
      if (closed.count(key_of(end))) continue;
      const double g = current.g + prim->horizon_s;
      nodes.push_back({end, g, static_cast<std::int64_t>(item.node), prim});
      open.push({g + heuristic(end), order++, nodes.size() - 1});
    }
  }
  throw Error(ErrorCode::kNoPath, "goal not reachable above the altitude floor after " +
                                      std::to_string(expansions) + " expansions");
}

/// Executes a plan's course changes through the simulator, with lookups
/// redone at the simulated courses.
inline Trajectory simulate_plan(const PlanProblem& problem, const Plan& plan_result,
                                double dt = kDefaultSimDt) {
  return run_sequence(*problem.table, problem.wind, problem.start, plan_result.delta_course_deg, dt);
}

}  // namespace glidesafe
