#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "glidesafe/planner.hpp"
#include "test_support.hpp"

using namespace glidesafe;

namespace {

PlanProblem problem(double gn, double ge, double r, const WindVector& w = {}) {
  PlanProblem p;
  p.table = &testsupport::small_table();
  p.start = initial_state(units::kts_to_ms(90.0), 0.0, 2000.0);
  p.goal = {gn, ge, r};
  p.wind = w;
  return p;
}

}  // namespace

TEST(Planner, GoalAheadIsOneStraightPrimitive) {
  // 15 kt tailwind; one straight primitive covers roughly 540 m.
  const WindVector tail = WindVector::from_meteorological(units::kts_to_ms(15.0), units::kPi);
  const PlanProblem pb = problem(530.0, 0.0, 60.0, tail);
  const Plan plan_result = plan(pb);
  ASSERT_EQ(plan_result.delta_course_deg.size(), 1u);
  EXPECT_EQ(plan_result.delta_course_deg[0], 0.0);
}

TEST(Planner, StartInsideGoalIsEmptyPlan) {
  EXPECT_TRUE(plan(problem(10.0, 0.0, 50.0)).primitives.empty());
}

TEST(Planner, GoalToTheEastNeedsNetRightTurn) {
  const PlanProblem pb = problem(0.0, 2500.0, 150.0);
  const Plan r = plan(pb);
  const double net = std::accumulate(r.delta_course_deg.begin(), r.delta_course_deg.end(), 0.0);
  // Minimum time into a radius does not fix the final course exactly.
  EXPECT_GT(net, 0.0);
  EXPECT_LE(std::abs(net - 90.0), 30.0);
  const Trajectory t = simulate_plan(pb, r);
  EXPECT_TRUE(pb.goal.contains(t.states.back().north_m, t.states.back().east_m));
}

TEST(Planner, PlansCloseInSimulation) {
  const WindVector w = WindVector::from_meteorological(units::kts_to_ms(15.0), 0.0);
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    PlanProblem pb = problem(0.0, 0.0, 150.0, w);
    const Trajectory probe = run_random_sequence(*pb.table, w, pb.start, seed, 3, 0.0, 0.05);
    pb.goal.north_m = probe.states.back().north_m;
    pb.goal.east_m = probe.states.back().east_m;
    const Plan r = plan(pb);
    const Trajectory t = simulate_plan(pb, r);
    EXPECT_TRUE(pb.goal.contains(t.states.back().north_m, t.states.back().east_m)) << seed;
    EXPECT_LE(r.cost_s, probe.duration_s() + 1e-9) << seed;
  }
}

TEST(Planner, AltitudeFloorGivesNoPath) {
  PlanProblem pb = problem(8000.0, 0.0, 100.0);
  pb.start.alt_m = 200.0;
  try {
    plan(pb);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoPath);
  }
}

TEST(Planner, InvalidProblem) {
  PlanProblem pb = problem(100.0, 0.0, 0.0);
  EXPECT_THROW(plan(pb), Error);
  pb.goal.radius_m = 10.0;
  pb.table = nullptr;
  EXPECT_THROW(plan(pb), Error);
}
