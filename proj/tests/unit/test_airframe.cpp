#include <gtest/gtest.h>

#include <cmath>

#include "glidesafe/airframe.hpp"

using namespace glidesafe;

// Reference values below were computed with 50-digit arithmetic from the
// model equations, independently of this code.

TEST(Airframe, WeightAndLiftCoefficient) {
  const AircraftParams p = clean_polar();
  EXPECT_NEAR(p.weight_N(), 13792.86, 1e-9);
  EXPECT_NEAR(lift_coefficient(p, {46.3, 0.0, 0.0}), 0.649645198708694, 1e-12);
}

TEST(Airframe, DragAtFiveDegreesDescent) {
  const AircraftParams p = clean_polar();
  const double d = drag_N(p, {46.3, units::deg_to_rad(-5.0), 0.0});
  EXPECT_NEAR(d, 1053.4367, 1e-4);
  AircraftParams parasite_only = p;
  parasite_only.induced_factor_k = 0.0;
  EXPECT_NEAR(drag_N(parasite_only, {46.3, 0.0, 0.0}), 573.2471, 1e-4);
}

TEST(Airframe, AirspeedRate) {
  const AircraftParams p = clean_polar();
  EXPECT_NEAR(airspeed_rate(p, {46.3, 0.0, 0.0}), -0.751857905653382, 1e-12);
  EXPECT_NEAR(airspeed_rate(p, {46.3, units::deg_to_rad(-10.0), 0.0}), 0.962007899895871, 1e-12);
}

TEST(Airframe, EquilibriumGlideAngle) {
  const AircraftParams clean = clean_polar();
  const double g = equilibrium_glide_angle(clean, 46.3, 0.0);
  EXPECT_NEAR(units::rad_to_deg(g), -4.38379478964455, 1e-10);
  EXPECT_NEAR(airspeed_rate(clean, {46.3, g, 0.0}), 0.0, 1e-10);

  const double ge = equilibrium_glide_angle(engine_out_polar(), units::kts_to_ms(90.0), 0.0);
  EXPECT_NEAR(ge, -0.116968007623543, 1e-12);
}

TEST(Airframe, BankRaisesDragAndSteepensGlide) {
  const AircraftParams p = engine_out_polar();
  const double level = equilibrium_glide_angle(p, 46.3, 0.0);
  const double banked = equilibrium_glide_angle(p, 46.3, units::deg_to_rad(30.0));
  EXPECT_LT(banked, level);
  EXPECT_GT(drag_N(p, {46.3, 0.0, units::deg_to_rad(30.0)}), drag_N(p, {46.3, 0.0, 0.0}));
}

TEST(Airframe, RateDecreasesWithGammaIncrease) {
  const AircraftParams p = engine_out_polar();
  double prev = airspeed_rate(p, {46.3, units::deg_to_rad(-20.0), 0.0});
  for (double deg = -19.0; deg <= 0.0; deg += 1.0) {
    const double f = airspeed_rate(p, {46.3, units::deg_to_rad(deg), 0.0});
    EXPECT_LT(f, prev);
    prev = f;
  }
}

TEST(Airframe, InvalidInputsThrow) {
  const AircraftParams p = engine_out_polar();
  EXPECT_THROW(drag_N(p, {0.0, 0.0, 0.0}), Error);
  EXPECT_THROW(drag_N(p, {46.3, 0.0, units::deg_to_rad(90.0)}), Error);
  AircraftParams bad = p;
  bad.mass_kg = -1.0;
  EXPECT_THROW(bad.validate(), Error);
}

TEST(Airframe, NoEquilibriumWhenDragExceedsWeight) {
  AircraftParams p = engine_out_polar();
  p.cd0 = 50.0;
  try {
    equilibrium_glide_angle(p, 46.3, 0.0);
    FAIL() << "expected NoEquilibrium";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoEquilibrium);
  }
}
