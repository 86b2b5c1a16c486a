#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "glidesafe/surrogate.hpp"

using namespace glidesafe;

TEST(Surrogate, MovingAverageZeroHalfWindowIsIdentity) {
  const std::vector<double> v{3.0, -1.5, 2.25, 7.0, 0.125};
  EXPECT_EQ(moving_average(v, 0), v);
}

TEST(Surrogate, MovingAverageShrinksAtEnds) {
  const std::vector<double> v{0.0, 1.0, 4.0, 9.0, 16.0};
  const auto m = moving_average(v, 1);
  EXPECT_DOUBLE_EQ(m[0], 0.0);
  EXPECT_DOUBLE_EQ(m[1], 5.0 / 3.0);
  EXPECT_DOUBLE_EQ(m[2], 14.0 / 3.0);
  EXPECT_DOUBLE_EQ(m[3], 29.0 / 3.0);
  EXPECT_DOUBLE_EQ(m[4], 16.0);
}

TEST(Surrogate, CentralDifferenceExactOnLinearAndQuadratic) {
  const double dt = 0.05;
  std::vector<double> lin, quad;
  for (int k = 0; k < 40; ++k) {
    const double t = k * dt;
    lin.push_back(2.0 - 0.7 * t);
    quad.push_back(1.0 + 0.5 * t - 3.0 * t * t);
  }
  const auto dl = central_difference(lin, dt);
  const auto dq = central_difference(quad, dt);
  for (int k = 1; k + 1 < 40; ++k) {
    EXPECT_NEAR(dl[k], -0.7, 1e-12);
    EXPECT_NEAR(dq[k], 0.5 - 6.0 * k * dt, 1e-11);
  }
  EXPECT_NEAR(dl.front(), -0.7, 1e-12);
  EXPECT_NEAR(dl.back(), -0.7, 1e-12);
}

TEST(Surrogate, ResampleExactAtNodesAndLinearBetween) {
  const std::vector<TimedSample> s{{0.0, 1.0}, {0.1, 2.0}, {0.2, 0.0}, {0.3, 5.0}};
  const auto r = resample_uniform(s, 0.05);
  ASSERT_EQ(r.size(), 7u);
  EXPECT_DOUBLE_EQ(r[0].value, 1.0);
  EXPECT_DOUBLE_EQ(r[1].value, 1.5);
  EXPECT_NEAR(r[2].value, 2.0, 1e-12);
  EXPECT_NEAR(r[3].value, 1.0, 1e-12);
  EXPECT_NEAR(r[4].value, 0.0, 1e-12);
  EXPECT_NEAR(r[6].value, 5.0, 1e-12);
}

TEST(Surrogate, PipelineHandExample) {
  // Values 0, 1, 4, 9, 16 at unit spacing with L = 1:
  // smoothed 0, 5/3, 14/3, 29/3, 16; differences 5/3, 7/3, 4, 17/3, 19/3;
  // mean of the first four = 41/12.
  std::vector<TimedSample> s;
  for (int k = 0; k < 5; ++k) s.push_back({static_cast<double>(k), static_cast<double>(k * k)});
  EXPECT_NEAR(time_averaged_rate(s, 1.0, 1), 41.0 / 12.0, 1e-14);
}

TEST(Surrogate, MeanRateOfLinearSignalIsSlope) {
  std::vector<TimedSample> s;
  for (int k = 0; k <= 200; ++k) s.push_back({k * 0.05, 46.0 + 0.3 * k * 0.05});
  EXPECT_NEAR(time_averaged_rate(s, 0.05, 5), 0.3, 1e-12);
}

TEST(Surrogate, InsufficientSamples) {
  const std::vector<TimedSample> one{{0.0, 1.0}};
  try {
    resample_uniform(one, 0.05);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInsufficientSamples);
  }
  const std::vector<double> two{1.0, 2.0};
  EXPECT_THROW(central_difference(two, 0.1), Error);
  EXPECT_THROW(moving_average(two, -1), Error);
}
