// glidesafe: synthesize primitive tables, simulate and plan with them, and
// check airspeed invariance of the resulting trajectories.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "glidesafe/glidesafe.hpp"

namespace gs = glidesafe;
using nlohmann::json;

namespace {

enum Exit : int {
  kOk = 0,
  kConfig = 2,
  kSynthesis = 3,
  kInfeasibleSequence = 4,
  kNoPath = 5,
  kViolation = 6,
};

std::vector<double> parse_numbers(const std::string& text, std::size_t expected, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw gs::Error(gs::ErrorCode::kConfigError, std::string("bad number in ") + what + ": '" + item + "'");
    }
  }
  if (out.size() != expected) {
    throw gs::Error(gs::ErrorCode::kConfigError,
                    std::string(what) + " needs " + std::to_string(expected) + " comma-separated values");
  }
  return out;
}

struct WindOptions {
  double speed_kts = 0.0;
  double from_deg = 0.0;
  gs::WindVector vector() const {
    return gs::WindVector::from_meteorological(gs::units::kts_to_ms(speed_kts),
                                               gs::units::deg_to_rad(from_deg));
  }
};

void add_wind_options(CLI::App* cmd, WindOptions& w) {
  cmd->add_option("--wind-kts", w.speed_kts, "Ambient wind speed [kt]")->capture_default_str();
  cmd->add_option("--wind-from-deg", w.from_deg, "Direction the wind blows from [deg]")
      ->capture_default_str();
}

gs::PrimitiveTable load_table_or_config_error(const std::string& path) {
  try {
    return gs::load_table(path);
  } catch (const gs::Error& e) {
    throw gs::Error(gs::ErrorCode::kConfigError, e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw gs::Error(gs::ErrorCode::kIoError, "cannot open " + path + " for writing");
  f << text;
  if (!f) throw gs::Error(gs::ErrorCode::kIoError, "failed writing " + path);
}

void print_invariance(const gs::InvarianceReport& r) {
  std::printf("airspeed min %.3f kt, max %.3f kt, mean %.3f kt, stddev %.3f kt, violations %zu\n",
              gs::units::ms_to_kts(r.v_min_observed_ms), gs::units::ms_to_kts(r.v_max_observed_ms),
              gs::units::ms_to_kts(r.mean_ms), gs::units::ms_to_kts(r.stddev_ms), r.violation_count);
}

// ------------------------------------------------------------ synthesize

struct SynthesizeArgs {
  std::string config;
  std::string out;
  std::string grid;
  int jobs = 0;
};

int cmd_synthesize(const SynthesizeArgs& a) {
  gs::RunConfig cfg;
  try {
    cfg = gs::load_run_config(a.config);
    if (a.grid == "ci") cfg.grid = gs::ci_grid();
    else if (a.grid == "default") cfg.grid = gs::default_grid();
  } catch (const gs::Error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfig;
  }
  const unsigned jobs = gs::resolve_jobs(a.jobs > 0 ? a.jobs : cfg.jobs);
  std::printf("synthesizing %zu cases with %u worker(s)\n", cfg.grid.size(), jobs);
  gs::PrimitiveTable table;
  try {
    table = gs::synthesize_table(cfg.synthesis, cfg.grid, jobs);
    gs::save_table(table, a.out);
  } catch (const gs::Error& e) {
    std::fprintf(stderr, "synthesis failed: %s\n", e.what());
    return kSynthesis;
  }
  const std::size_t feasible = table.feasible_count();
  double min_lo = std::numeric_limits<double>::infinity();
  double min_hi = std::numeric_limits<double>::infinity();
  for (const auto& e : table.entries) {
    if (!e.feasible) continue;
    min_lo = std::min(min_lo, e.primitive.tangency_min);
    min_hi = std::min(min_hi, -e.primitive.tangency_max);
  }
  std::printf("%zu cases: %zu feasible, %zu infeasible\n", table.entries.size(), feasible,
              table.entries.size() - feasible);
  if (feasible > 0) {
    std::printf("min tangency margins: f~(v_min) >= %.6g m/s^2, -f~(v_max) >= %.6g m/s^2\n", min_lo,
                min_hi);
  }
  std::printf("fingerprint %s -> %s\n", gs::config_fingerprint(table.config, table.grid).c_str(),
              a.out.c_str());
  return kOk;
}

// ------------------------------------------------------------ simulate

struct SimulateArgs {
  std::string table;
  std::string sequence;
  std::size_t random = 0;
  std::uint64_t seed = 1;
  double min_duration_s = 0.0;
  double airspeed_kts = 90.0;
  double alt_m = 3000.0;
  double course_deg = 0.0;
  double dt = gs::kDefaultSimDt;
  std::string out;
  WindOptions wind;
};

std::vector<double> read_sequence_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw gs::Error(gs::ErrorCode::kConfigError, "cannot open " + path);
  try {
    const json j = json::parse(f);
    if (j.is_array()) return j.get<std::vector<double>>();
    return j.at("dchi_deg").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw gs::Error(gs::ErrorCode::kConfigError, path + ": " + e.what());
  }
}

int cmd_simulate(const SimulateArgs& a) {
  gs::PrimitiveTable table;
  std::vector<double> sequence;
  try {
    table = load_table_or_config_error(a.table);
    if (!a.sequence.empty()) sequence = read_sequence_file(a.sequence);
  } catch (const gs::Error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfig;
  }
  const gs::WindVector wind = a.wind.vector();
  gs::Trajectory traj;
  try {
    const gs::SimState start = gs::initial_state(gs::units::kts_to_ms(a.airspeed_kts),
                                                 gs::units::deg_to_rad(a.course_deg), a.alt_m);
    if (a.sequence.empty()) {
      traj = gs::run_random_sequence(table, wind, start, a.seed, a.random, a.min_duration_s, a.dt);
    } else {
      traj = gs::run_sequence(table, wind, start, sequence, a.dt);
    }
  } catch (const gs::Error& e) {
    std::fprintf(stderr, "infeasible sequence: %s\n", e.what());
    return e.code() == gs::ErrorCode::kInvalidArgument || e.code() == gs::ErrorCode::kNonFiniteState
               ? kConfig
               : kInfeasibleSequence;
  }
  try {
    gs::write_trajectory_csv(traj, a.out);
  } catch (const gs::Error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kConfig;
  }
  const std::vector<std::vector<gs::SimState>> runs{traj.states};
  const auto report = gs::analyze(runs, table.config.envelope);
  const auto energy = gs::check_energy(table.config.aircraft, traj);
  std::printf("%zu primitives, %.2f s, %zu samples -> %s\n", traj.sequence.size(), traj.duration_s(),
              traj.states.size(), a.out.c_str());
  print_invariance(report);
  std::printf("energy balance: max relative error %.3g over %zu steps\n", energy.max_relative_error,
              energy.steps);
  return kOk;
}

// ------------------------------------------------------------ plan

struct PlanArgs {
  std::string table;
  std::string start;
  std::string goal;
  std::string out;
  std::string csv;
  double airspeed_kts = 90.0;
  double floor_m = 0.0;
  double cell_m = 50.0;
  std::size_t max_expansions = 200000;
  WindOptions wind;
};

int cmd_plan(const PlanArgs& a) {
  gs::PrimitiveTable table;
  gs::PlanProblem problem;
  try {
    table = load_table_or_config_error(a.table);
    const auto s = parse_numbers(a.start, 4, "--start");
    const auto g = parse_numbers(a.goal, 3, "--goal");
    problem.start = gs::initial_state(gs::units::kts_to_ms(a.airspeed_kts),
                                      gs::units::deg_to_rad(s[3]), s[2], s[0], s[1]);
    problem.goal = {g[0], g[1], g[2]};
    problem.wind = a.wind.vector();
    problem.table = &table;
    problem.altitude_floor_m = a.floor_m;
    problem.cell_m = a.cell_m;
    problem.max_expansions = a.max_expansions;
    problem.validate();
  } catch (const gs::Error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfig;
  }
  gs::Plan result;
  gs::Trajectory traj;
  try {
    result = gs::plan(problem);
    traj = gs::simulate_plan(problem, result);
  } catch (const gs::Error& e) {
    std::fprintf(stderr, "no path: %s\n", e.what());
    return e.code() == gs::ErrorCode::kNoPath ? kNoPath : kInfeasibleSequence;
  }
  const gs::SimState& end = traj.states.back();
  json prims = json::array();
  for (const auto& p : result.primitives) {
    prims.push_back({{"dchi_deg", p.delta_course_deg},
                     {"cell_wind_kts", p.wind_speed_kts},
                     {"cell_wind_dir_deg", p.wind_dir_deg},
                     {"gamma_g_deg", gs::units::rad_to_deg(p.gamma_g_star_rad)},
                     {"horizon_s", p.horizon_s}});
  }
  const json doc = {
      {"fingerprint", traj.fingerprint},
      {"start", {{"north_m", problem.start.north_m}, {"east_m", problem.start.east_m},
                 {"alt_m", problem.start.alt_m},
                 {"course_deg", gs::units::rad_to_deg(problem.start.course_rad)},
                 {"airspeed_kts", a.airspeed_kts}}},
      {"goal", {{"north_m", problem.goal.north_m}, {"east_m", problem.goal.east_m},
                {"radius_m", problem.goal.radius_m}}},
      {"wind", {{"speed_kts", a.wind.speed_kts}, {"from_deg", a.wind.from_deg}}},
      {"dchi_deg", result.delta_course_deg},
      {"primitives", prims},
      {"flight_time_s", result.cost_s},
      {"expansions", result.expansions},
      {"end", {{"north_m", end.north_m}, {"east_m", end.east_m}, {"alt_m", end.alt_m}}},
      {"goal_distance_m", problem.goal.distance(end.north_m, end.east_m)}};
  const std::string csv = a.csv.empty() ? std::filesystem::path(a.out).replace_extension(".csv").string() : a.csv;
  try {
    write_text(a.out, doc.dump(1) + "\n");
    gs::write_trajectory_csv(traj, csv);
  } catch (const gs::Error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kConfig;
  }
  std::printf("plan: %zu primitives, %.1f s, %zu expansions, ends %.1f m from goal\n",
              result.primitives.size(), result.cost_s, result.expansions,
              problem.goal.distance(end.north_m, end.east_m));
  std::printf("wrote %s and %s\n", a.out.c_str(), csv.c_str());
  return kOk;
}

// ------------------------------------------------------------ analyze

struct AnalyzeArgs {
  std::string envelope = "80:100";
  std::string report;
  std::vector<std::string> files;
  int bins = 50;
};

int cmd_analyze(const AnalyzeArgs& a) {
  gs::AirspeedEnvelope env;
  std::vector<std::vector<gs::SimState>> runs;
  try {
    const auto colon = a.envelope.find(':');
    if (colon == std::string::npos) throw gs::Error(gs::ErrorCode::kConfigError, "--envelope must be LO:HI");
    const double lo = std::stod(a.envelope.substr(0, colon));
    const double hi = std::stod(a.envelope.substr(colon + 1));
    env = gs::json_io::envelope_from_kts(lo, hi);
    env.validate();
    for (const auto& f : a.files) runs.push_back(gs::read_trajectory_csv(f));
  } catch (const std::exception& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return kConfig;
  }
  gs::InvarianceReport report;
  try {
    gs::HistogramSpec hist;
    hist.bins = a.bins;
    report = gs::analyze(runs, env, hist);
    write_text(a.report, gs::report_to_json(report).dump(1) + "\n");
  } catch (const gs::Error& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return kConfig;
  }
  std::printf("%zu trajectories, %zu samples, %.1f s simulated\n", report.trajectories, report.samples,
              report.total_sim_time_s);
  print_invariance(report);
  std::printf("%s\n", report.certified() ? "certified: all samples inside the envelope"
                                          : "VIOLATED: samples outside the envelope");
  return report.certified() ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Viability-certified gliding primitives: synthesis, simulation, planning, analysis"};
  app.require_subcommand(1);

  SynthesizeArgs syn;
  auto* c_syn = app.add_subcommand("synthesize", "Certify every maneuver cell and write the table");
  c_syn->add_option("--config", syn.config, "Run configuration JSON")->required();
  c_syn->add_option("--out", syn.out, "Output table JSON")->required();
  c_syn->add_option("--grid", syn.grid, "Override the grid preset")->check(CLI::IsMember({"default", "ci"}));
  c_syn->add_option("--jobs", syn.jobs, "Worker threads (GLIDE_JOBS, then all cores)");

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "Fly a primitive sequence and write a trajectory CSV");
  c_sim->add_option("--table", sim.table, "Primitive table JSON")->required();
  auto* o_seq = c_sim->add_option("--sequence", sim.sequence, "JSON list of course changes [deg]");
  auto* o_rand = c_sim->add_option("--random", sim.random, "Number of random primitives");
  o_seq->excludes(o_rand);
  c_sim->add_option("--seed", sim.seed, "Seed for --random")->capture_default_str();
  c_sim->add_option("--min-duration", sim.min_duration_s, "Keep drawing until this long [s]");
  c_sim->add_option("--airspeed-kts", sim.airspeed_kts, "Initial airspeed")->capture_default_str();
  c_sim->add_option("--alt-m", sim.alt_m, "Initial altitude")->capture_default_str();
  c_sim->add_option("--course-deg", sim.course_deg, "Initial course")->capture_default_str();
  c_sim->add_option("--dt", sim.dt, "Integration step [s]")->capture_default_str();
  c_sim->add_option("--out", sim.out, "Trajectory CSV")->required();
  add_wind_options(c_sim, sim.wind);

  PlanArgs pl;
  auto* c_plan = app.add_subcommand("plan", "Search a primitive sequence reaching a goal region");
  c_plan->add_option("--table", pl.table, "Primitive table JSON")->required();
  c_plan->add_option("--start", pl.start, "N,E,alt,course (m, m, m, deg)")->required();
  c_plan->add_option("--goal", pl.goal, "N,E,radius (m)")->required();
  c_plan->add_option("--out", pl.out, "Plan JSON")->required();
  c_plan->add_option("--csv", pl.csv, "Trajectory CSV (default: plan path with .csv)");
  c_plan->add_option("--airspeed-kts", pl.airspeed_kts, "Initial airspeed")->capture_default_str();
  c_plan->add_option("--floor-m", pl.floor_m, "Altitude floor")->capture_default_str();
  c_plan->add_option("--cell-m", pl.cell_m, "Position cell size")->capture_default_str();
  c_plan->add_option("--max-expansions", pl.max_expansions, "Search budget")->capture_default_str();
  add_wind_options(c_plan, pl.wind);

  AnalyzeArgs an;
  auto* c_an = app.add_subcommand("analyze", "Airspeed invariance report over trajectory CSVs");
  c_an->add_option("--envelope", an.envelope, "LO:HI airspeed envelope [kt]")->capture_default_str();
  c_an->add_option("--report", an.report, "Report JSON")->required();
  c_an->add_option("--bins", an.bins, "Histogram bins")->capture_default_str();
  c_an->add_option("files", an.files, "Trajectory CSV files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfig;
  }

  try {
    if (*c_syn) return cmd_synthesize(syn);
    if (*c_sim) {
      if (sim.sequence.empty() && sim.random == 0 && sim.min_duration_s <= 0.0) {
        std::fprintf(stderr, "simulate needs --sequence or --random N\n");
        return kConfig;
      }
      return cmd_simulate(sim);
    }
    if (*c_plan) return cmd_plan(pl);
    if (*c_an) return cmd_analyze(an);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
