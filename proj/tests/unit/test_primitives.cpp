#include <gtest/gtest.h>

#include <cmath>

#include "glidesafe/primitives.hpp"
#include "test_support.hpp"

using namespace glidesafe;

TEST(Primitives, GridCardinality) {
  EXPECT_EQ(default_grid().size(), 2808u);
  EXPECT_EQ(ci_grid().size(), 312u);
  const ManeuverGrid g = default_grid();
  EXPECT_EQ(g.delta_course_deg.front(), -90.0);
  EXPECT_EQ(g.delta_course_deg.back(), 90.0);
  EXPECT_EQ(g.wind_speed_kts.back(), 15.6);
  EXPECT_EQ(g.wind_direction_deg.front(), -180.0);
  EXPECT_EQ(g.wind_direction_deg.back(), 165.0);
}

TEST(Primitives, RowMajorIndex) {
  const ManeuverGrid g = ci_grid();
  EXPECT_EQ(g.index(0, 0, 0), 0u);
  EXPECT_EQ(g.index(0, 0, 1), 1u);
  EXPECT_EQ(g.index(0, 1, 0), 8u);
  EXPECT_EQ(g.index(1, 0, 0), 24u);
  EXPECT_EQ(g.index(12, 2, 7), 311u);
}

TEST(Primitives, GridValidation) {
  ManeuverGrid g = ci_grid();
  g.wind_speed_kts.push_back(0.0);
  EXPECT_THROW(g.validate(), Error);
  g = ci_grid();
  g.delta_course_deg.clear();
  EXPECT_THROW(g.validate(), Error);
}

TEST(Primitives, NearestSpeedTiesGoLow) {
  const std::vector<double> s{0.0, 7.8, 15.6};
  EXPECT_EQ(detail::nearest_speed(s, 3.9), 0u);
  EXPECT_EQ(detail::nearest_speed(s, 4.0), 1u);
  EXPECT_EQ(detail::nearest_speed(s, 30.0), 2u);
}

TEST(Primitives, NearestDirectionWrapsAround) {
  const ManeuverGrid g = default_grid();
  const auto& d = g.wind_direction_deg;
  EXPECT_EQ(d[detail::nearest_direction(d, 179.0)], -180.0);
  EXPECT_EQ(d[detail::nearest_direction(d, -172.5)], -180.0);  // tie picks the smaller angle
  EXPECT_EQ(d[detail::nearest_direction(d, 7.4)], 0.0);
  EXPECT_EQ(d[detail::nearest_direction(d, 7.6)], 15.0);
}

TEST(Primitives, LocateRequiresExactCourseChange) {
  const ManeuverGrid g = ci_grid();
  const CellIndex c = locate_cell(g, units::deg_to_rad(45.0), 0.0, 0.0);
  EXPECT_EQ(g.delta_course_deg[c.dchi], 45.0);
  try {
    locate_cell(g, units::deg_to_rad(44.0), 0.0, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoMatch);
  }
}

TEST(Primitives, SmallTableAllFeasibleAndCertified) {
  const PrimitiveTable& t = testsupport::small_table();
  ASSERT_EQ(t.entries.size(), t.grid.size());
  EXPECT_EQ(t.feasible_count(), t.entries.size());
  for (const auto& e : t.entries) {
    if (!e.feasible) continue;
    EXPECT_GE(e.primitive.tangency_min, 0.0);
    EXPECT_LE(e.primitive.tangency_max, 0.0);
    EXPECT_LE(e.primitive.gamma_g_star_rad, 0.0);
    EXPECT_GE(e.primitive.gamma_g_star_rad, units::deg_to_rad(-10.0) - 1e-12);
  }
}

TEST(Primitives, CalmCellsIgnoreDirection) {
  const PrimitiveTable& t = testsupport::small_table();
  for (std::size_t i = 0; i < t.grid.delta_course_deg.size(); ++i) {
    const auto& ref = t.entries[t.grid.index(i, 0, 0)].primitive;
    for (std::size_t k = 1; k < t.grid.wind_direction_deg.size(); ++k) {
      EXPECT_EQ(t.entries[t.grid.index(i, 0, k)].primitive.gamma_g_star_rad, ref.gamma_g_star_rad);
    }
  }
}

TEST(Primitives, SymmetricTurnsInCalmAir) {
  const PrimitiveTable& t = testsupport::small_table();
  const auto& left = lookup(t, units::deg_to_rad(-30.0), 0.0, 0.0);
  const auto& right = lookup(t, units::deg_to_rad(30.0), 0.0, 0.0);
  EXPECT_NEAR(left.gamma_g_star_rad, right.gamma_g_star_rad, 1e-9);
}

TEST(Primitives, ParallelSynthesisIsOrderIndependent) {
  ManeuverGrid g;
  g.delta_course_deg = {-15.0, 0.0, 15.0};
  g.wind_speed_kts = {10.0};
  g.wind_direction_deg = {0.0, 90.0, 180.0};
  const PrimitiveTable a = synthesize_table(SynthesisConfig{}, g, 1);
  const PrimitiveTable b = synthesize_table(SynthesisConfig{}, g, 3);
  ASSERT_EQ(a.entries.size(), b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    EXPECT_EQ(a.entries[i].primitive.gamma_g_star_rad, b.entries[i].primitive.gamma_g_star_rad);
    EXPECT_EQ(a.entries[i].primitive.cost, b.entries[i].primitive.cost);
  }
}

TEST(Primitives, InfeasibleCellLookupThrows) {
  PrimitiveTable t = testsupport::small_table();
  const CellIndex c = locate_cell(t.grid, 0.0, 0.0, 0.0);
  t.entries[t.grid.index(c.dchi, c.speed, c.dir)].feasible = false;
  try {
    lookup(t, 0.0, 0.0, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCellInfeasible);
  }
}

TEST(Primitives, LookupForCourseUsesRelativeWind) {
  const PrimitiveTable& t = testsupport::small_table();
  // 15.6 kt from the east seen while flying east is a headwind (relative 0).
  const WindVector east = WindVector::from_meteorological(units::kts_to_ms(15.6), units::deg_to_rad(90.0));
  const Primitive& p = lookup_for_course(t, 0.0, east, units::deg_to_rad(90.0));
  EXPECT_EQ(p.wind_dir_deg, 0.0);
  EXPECT_EQ(p.wind_speed_kts, 15.6);
}
