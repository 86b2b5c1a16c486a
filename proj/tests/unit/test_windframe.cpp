#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "glidesafe/root_finding.hpp"
#include "glidesafe/windframe.hpp"

using namespace glidesafe;

namespace {

/// Bracketed reference solver: bisection on |v_g u - w|^2 - v_a^2 over
/// v_g in [0, v_a + |w|], where it changes sign once for v_a > |w|.
double bracketed_gamma_air(double gamma_g, double v_a, double course, const WindVector& w) {
  const double ux = std::cos(gamma_g) * std::cos(course);
  const double uy = std::cos(gamma_g) * std::sin(course);
  auto f = [&](double vg) {
    const double dn = vg * ux - w.north_ms;
    const double de = vg * uy - w.east_ms;
    const double dz = vg * std::sin(gamma_g);
    return dn * dn + de * de + dz * dz - v_a * v_a;
  };
  const auto vg = detail::bisect(f, 0.0, v_a + w.speed_ms(), 400);
  EXPECT_TRUE(vg.has_value());
  return std::asin(vg.value() * std::sin(gamma_g) / v_a);
}

}  // namespace

TEST(Windframe, MeteorologicalConvention) {
  const WindVector north = WindVector::from_meteorological(10.0, 0.0);
  EXPECT_NEAR(north.north_ms, -10.0, 1e-15);
  EXPECT_NEAR(north.east_ms, 0.0, 1e-15);
  EXPECT_NEAR(north.from_direction_rad(), 0.0, 1e-15);
  const WindVector west = WindVector::from_meteorological(5.0, units::deg_to_rad(270.0));
  EXPECT_NEAR(west.east_ms, 5.0, 1e-14);
  EXPECT_NEAR(units::rad_to_deg(west.from_direction_rad()), -90.0, 1e-12);
  EXPECT_EQ(WindVector{}.from_direction_rad(), 0.0);
}

TEST(Windframe, RelativeToCourse) {
  const WindVector w = WindVector::from_meteorological(8.0, units::deg_to_rad(100.0));
  const WindVector rel = w.relative_to_course(units::deg_to_rad(90.0));
  EXPECT_NEAR(units::rad_to_deg(rel.from_direction_rad()), 10.0, 1e-10);
  EXPECT_NEAR(rel.speed_ms(), 8.0, 1e-14);
}

TEST(Windframe, HeadwindSteepensGroundPath) {
  const WindVector head = WindVector::from_meteorological(10.0, 0.0);
  const AirState a{0.0, units::deg_to_rad(-5.0), 50.0};
  const Vec3 vg = compose_ground_velocity(a, head);
  EXPECT_NEAR(vg.horizontal_norm(), 39.8097349045873, 1e-10);
  EXPECT_NEAR(vg.norm(), 40.0475380255548, 1e-10);
  EXPECT_NEAR(units::rad_to_deg(gamma_air_to_ground(a.gamma_air_rad, a, head)), -6.24703058964111,
              1e-10);
}

TEST(Windframe, TailwindFlattensGroundPath) {
  const WindVector tail = WindVector::from_meteorological(10.0, units::kPi);
  const AirState a{0.0, units::deg_to_rad(-5.0), 50.0};
  EXPECT_NEAR(compose_ground_velocity(a, tail).norm(), 59.9682807665164, 1e-10);
  EXPECT_NEAR(units::rad_to_deg(gamma_air_to_ground(a.gamma_air_rad, a, tail)), -4.16725442657806,
              1e-10);
}

TEST(Windframe, ZeroWindIsIdentity) {
  const AirSolution s = gamma_ground_to_air(-0.1, 40.0, 1.0, WindVector{});
  EXPECT_DOUBLE_EQ(s.gamma_air_rad, -0.1);
  EXPECT_DOUBLE_EQ(s.groundspeed_ms, 40.0);
  EXPECT_NEAR(s.heading_rad, 1.0, 1e-15);
}

TEST(Windframe, InverseMatchesBracketedSolver) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> gam(-0.3, 0.1), va(30.0, 70.0), ang(-units::kPi, units::kPi),
      frac(0.0, 0.95);
  for (int i = 0; i < 2000; ++i) {
    const double v = va(rng);
    const WindVector w = WindVector::from_meteorological(frac(rng) * v, ang(rng));
    const double gg = gam(rng);
    const double course = ang(rng);
    const AirSolution s = gamma_ground_to_air(gg, v, course, w);
    ASSERT_NEAR(s.gamma_air_rad, bracketed_gamma_air(gg, v, course, w), 1e-11);
  }
}

TEST(Windframe, RoundTripAndResiduals) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> gam(-0.3, 0.1), va(30.0, 70.0), ang(-units::kPi, units::kPi),
      frac(0.0, 0.95);
  for (int i = 0; i < 10000; ++i) {
    const double v = va(rng);
    const WindVector w = WindVector::from_meteorological(frac(rng) * v, ang(rng));
    const AirState a{ang(rng), gam(rng), v};
    const double gg = gamma_air_to_ground(a.gamma_air_rad, a, w);
    const Vec3 vg = compose_ground_velocity(a, w);
    const double course = std::atan2(vg.east, vg.north);
    const AirSolution s = gamma_ground_to_air(gg, v, course, w);
    ASSERT_NEAR(s.gamma_air_rad, a.gamma_air_rad, 1e-10);
    ASSERT_NEAR(units::circular_distance(s.heading_rad, a.heading_rad), 0.0, 1e-9);
    const TriangleResiduals r = triangle_residuals(gg, v, course, w, s);
    ASSERT_LT(std::abs(r.vertical), 1e-9);
    ASSERT_LT(std::abs(r.horizontal), 1e-9);
  }
}

TEST(Windframe, StrongWindFailures) {
  const WindVector w = WindVector::from_meteorological(30.0, 0.0);
  try {
    gamma_ground_to_air(-0.1, 20.0, 0.0, w);  // straight into a wind stronger than airspeed
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoSolution);
  }
  try {
    gamma_ground_to_air(-0.1, 20.0, units::kPi, w);  // downwind: two ground speeds fit
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAmbiguousSolution);
  }
  WindVector vertical = w;
  vertical.down_ms = 1.0;
  EXPECT_THROW(gamma_ground_to_air(-0.1, 40.0, 0.0, vertical), Error);
}

TEST(Windframe, DegenerateGroundVelocity) {
  const WindVector w = WindVector::from_meteorological(20.0, 0.0);
  const AirState a{0.0, 0.0, 20.0};
  try {
    gamma_air_to_ground(0.0, a, w);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateVelocity);
  }
}
