#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>

#include "glidesafe/analysis.hpp"
#include "glidesafe/simulator.hpp"
#include "test_support.hpp"

using namespace glidesafe;

namespace {

const PrimitiveTable& table() { return testsupport::small_table(); }

SimState start_state(double course_deg = 0.0) {
  return initial_state(units::kts_to_ms(90.0), units::deg_to_rad(course_deg), 3000.0);
}

}  // namespace

TEST(Simulator, NinetyDegreePrimitiveTakesThirtySeconds) {
  const Primitive& p = lookup(table(), units::deg_to_rad(90.0), 0.0, 0.0);
  const Trajectory t = run_primitive(table(), WindVector{}, start_state(20.0), p);
  EXPECT_NEAR(t.duration_s(), 30.0, 1e-12);
  EXPECT_NEAR(t.states.back().course_rad - t.states.front().course_rad, units::deg_to_rad(90.0), 1e-9);
  for (const SimState& s : t.states) EXPECT_TRUE(table().config.envelope.contains(s.airspeed_ms));
}

TEST(Simulator, StraightPrimitiveLastsTau) {
  const Primitive& p = lookup(table(), 0.0, 0.0, 0.0);
  const Trajectory t = run_primitive(table(), WindVector{}, start_state(), p);
  EXPECT_EQ(t.duration_s(), 10.0);
  EXPECT_EQ(t.states.back().course_rad, 0.0);
}

TEST(Simulator, EmptySequenceIsSingleState) {
  const Trajectory t = run_sequence(table(), WindVector{}, start_state(), {});
  EXPECT_EQ(t.states.size(), 1u);
  EXPECT_TRUE(t.sequence.empty());
}

TEST(Simulator, SequenceContinuityAndCourseAccumulation) {
  const std::vector<double> seq{15.0, 30.0, -90.0, 0.0, 15.0, -15.0};
  const WindVector w = WindVector::from_meteorological(units::kts_to_ms(15.0), 0.0);
  const Trajectory t = run_sequence(table(), w, start_state(), seq);
  ASSERT_EQ(t.sequence.size(), seq.size());
  double expected_course = 0.0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    EXPECT_NEAR(t.sequence[i].start_course_rad, units::deg_to_rad(expected_course), 1e-9 * (i + 1));
    expected_course += seq[i];
  }
  EXPECT_NEAR(t.states.back().course_rad, units::deg_to_rad(expected_course), 1e-9 * seq.size());
  for (std::size_t i = 1; i < t.states.size(); ++i) ASSERT_GT(t.states[i].t_s, t.states[i - 1].t_s);
  EXPECT_LT(t.states.back().alt_m, t.states.front().alt_m);
}

TEST(Simulator, UnknownCourseChangeIsInfeasible) {
  try {
    run_sequence(table(), WindVector{}, start_state(), {0.0, 45.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSequenceInfeasible);
  }
}

TEST(Simulator, AlternatingTurnsStayInEnvelope) {
  std::vector<double> seq;
  for (int i = 0; i < 120; ++i) seq.push_back(i % 2 ? -15.0 : 15.0);  // 10 minutes
  const WindVector w = WindVector::from_meteorological(units::kts_to_ms(15.0), 0.0);
  const Trajectory t = run_sequence(table(), w, start_state(), seq);
  EXPECT_NEAR(t.duration_s(), 600.0, 1e-9);
  const std::vector<std::vector<SimState>> runs{t.states};
  EXPECT_EQ(analyze(runs, table().config.envelope).violation_count, 0u);
}

TEST(Simulator, EnergyBalance) {
  const WindVector w = WindVector::from_meteorological(units::kts_to_ms(12.0), units::deg_to_rad(70.0));
  const Trajectory t = run_sequence(table(), w, start_state(), {90.0, 0.0, -30.0, -90.0, 15.0});
  const EnergyCheck e = check_energy(table().config.aircraft, t);
  EXPECT_EQ(e.steps, t.states.size() - 1);
  EXPECT_EQ(e.violations, 0u);
  EXPECT_EQ(e.positive_rates, 0u);
  EXPECT_LT(e.max_relative_error, kEnergyRelTol);
}

TEST(Simulator, SeededRandomIsReproducible) {
  const WindVector w = WindVector::from_meteorological(units::kts_to_ms(15.0), 0.0);
  const Trajectory a = run_random_sequence(table(), w, start_state(), 9, 8, 0.0, 0.05);
  const Trajectory b = run_random_sequence(table(), w, start_state(), 9, 8, 0.0, 0.05);
  const Trajectory c = run_random_sequence(table(), w, start_state(), 10, 8, 0.0, 0.05);
  EXPECT_EQ(trajectory_to_csv(a), trajectory_to_csv(b));
  EXPECT_NE(trajectory_to_csv(a), trajectory_to_csv(c));
  EXPECT_EQ(a.sequence.size(), 8u);
  ASSERT_TRUE(a.seed.has_value());
  EXPECT_EQ(*a.seed, 9u);
}

TEST(Simulator, RandomRunsUntilMinimumDuration) {
  const Trajectory t = run_random_sequence(table(), WindVector{}, start_state(), 4, 1, 120.0, 0.05);
  EXPECT_GE(t.duration_s(), 120.0);
}

TEST(Simulator, CsvRoundTrip) {
  const Trajectory t = run_sequence(table(), WindVector{}, start_state(), {15.0, 0.0});
  const std::string path =
      (std::filesystem::temp_directory_path() / "glidesafe_traj.csv").string();
  write_trajectory_csv(t, path);
  const auto back = read_trajectory_csv(path);
  ASSERT_EQ(back.size(), t.states.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    ASSERT_EQ(back[i].t_s, t.states[i].t_s);
    ASSERT_EQ(units::ms_to_kts(back[i].airspeed_ms), units::ms_to_kts(t.states[i].airspeed_ms));
    ASSERT_EQ(units::rad_to_deg(back[i].course_rad), units::rad_to_deg(t.states[i].course_rad));
  }
  std::remove(path.c_str());
}

TEST(Simulator, CsvHeader) {
  const Trajectory t = run_sequence(table(), WindVector{}, start_state(), {});
  const std::string csv = trajectory_to_csv(t);
  EXPECT_NE(csv.find("\nt_s,north_m,east_m,alt_m,airspeed_kts,gamma_g_deg,gamma_a_deg,course_deg,bank_deg\n"),
            std::string::npos);
}
