#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "glidesafe/config.hpp"

using namespace glidesafe;
using nlohmann::json;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("glidesafe_cfg_" + name);
  std::ofstream(path) << text;
  return path;
}

ErrorCode config_error(const json& j) {
  try {
    run_config_from_json(j);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST(Config, DefaultsWhenEmpty) {
  const RunConfig c = run_config_from_json(json::object());
  EXPECT_EQ(c.grid.size(), 2808u);
  EXPECT_EQ(c.synthesis.aircraft, engine_out_polar());
  EXPECT_EQ(c.synthesis.envelope, AirspeedEnvelope{});
}

TEST(Config, ParsesAllBlocks) {
  const json j = json::parse(R"({
    "aircraft": {"mass_kg": 1200, "wing_area_m2": 15, "cd0": 0.05, "induced_k": 0.06, "rho": 1.2, "g": 9.8},
    "envelope_kts": [75, 105],
    "grid": "ci",
    "guidance": {"turn_rate_dps": 6, "tau_s": 8, "half_window": 3, "margin_lo": 0.01,
                 "gamma_box_deg": [-12, -1]},
    "wind": {"speed_kts": 10, "direction_deg": 90},
    "seed": 77, "jobs": 2})");
  const RunConfig c = run_config_from_json(j);
  EXPECT_EQ(c.synthesis.aircraft.mass_kg, 1200.0);
  EXPECT_EQ(units::ms_to_kts(c.synthesis.envelope.v_min_ms), 75.0);
  EXPECT_EQ(c.grid.size(), 312u);
  EXPECT_EQ(units::rad_to_deg(c.synthesis.guidance.horizon.turn_rate_rad_s), 6.0);
  EXPECT_EQ(c.synthesis.guidance.horizon.tau_s, 8.0);
  EXPECT_EQ(c.synthesis.guidance.surrogate.half_window, 3);
  EXPECT_EQ(c.synthesis.guidance.optimizer.margin_lo, 0.01);
  EXPECT_EQ(units::rad_to_deg(c.synthesis.guidance.optimizer.gamma_box.lo_rad), -12.0);
  EXPECT_NEAR(c.wind.east_ms, -units::kts_to_ms(10.0), 1e-12);
  EXPECT_EQ(c.seed, 77u);
  EXPECT_EQ(c.jobs, 2);
}

TEST(Config, InvalidEnvelope) {
  EXPECT_EQ(config_error(json::parse(R"({"envelope_kts": [100, 80]})")), ErrorCode::kConfigError);
  EXPECT_EQ(config_error(json::parse(R"({"envelope_kts": [80]})")), ErrorCode::kConfigError);
}

TEST(Config, UnknownGridPreset) {
  EXPECT_EQ(config_error(json::parse(R"({"grid": "huge"})")), ErrorCode::kConfigError);
}

TEST(Config, AircraftPathResolvesRelativeToConfig) {
  write_temp("plane.json",
             R"({"mass_kg": 900, "wing_area_m2": 14, "cd0": 0.04, "induced_k": 0.05, "rho": 1.225, "g": 9.81})");
  const auto cfg = write_temp("run.json", R"({"aircraft": "glidesafe_cfg_plane.json", "grid": "ci"})");
  const RunConfig c = load_run_config(cfg);
  EXPECT_EQ(c.synthesis.aircraft.mass_kg, 900.0);
}

TEST(Config, MissingAircraftFile) {
  const auto cfg = write_temp("run_missing.json", R"({"aircraft": "no_such_plane.json"})");
  try {
    load_run_config(cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfigError);
  }
}

TEST(Config, ShippedConfigsLoad) {
  const auto dir = std::filesystem::path(GLIDESAFE_SOURCE_DIR) / "config";
  EXPECT_EQ(load_run_config(dir / "default.json").grid.size(), 2808u);
  EXPECT_EQ(load_run_config(dir / "ci.json").grid.size(), 312u);
}
