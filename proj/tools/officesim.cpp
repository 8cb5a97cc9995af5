// Command-line front end: simulate, experiment, validate.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "officesim/building.hpp"
#include "officesim/engine.hpp"
#include "officesim/error.hpp"
#include "officesim/experiment.hpp"
#include "officesim/metering.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace officesim;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

json read_json(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SimError(ErrorCode::MalformedDocument, "cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SimError(ErrorCode::MalformedDocument, path.string() + ": " + e.what());
  }
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw SimError(ErrorCode::InvalidScenario, "cannot write '" + path.string() + "'");
  return out;
}

struct SimulateArgs {
  std::string scenario;
  std::string plan;
  std::optional<std::uint64_t> seed;
  std::optional<int> days;
  std::string out = "out";
};

int simulate(const SimulateArgs& args) {
  Scenario scenario = scenario_from_json(read_json(args.scenario));
  if (args.seed) scenario.seed = *args.seed;
  if (args.days) scenario.horizon_days = *args.days;
  scenario.validate();
  ModelInputs inputs{load_building_plan_file(args.plan), PopulationSpec{}};

  RunOptions options;
  options.record_user_events = true;
  const auto result = run_replication(scenario, inputs, scenario.seed, options);
  const auto betas = compute_betas(result.log, scenario.horizon_ticks());
  const double meter_wh = integrated_wh(result.meter);
  check_reconstruction(betas, meter_wh);

  const fs::path dir = args.out;
  fs::create_directories(dir);
  {
    auto f = open_out(dir / "meter.csv");
    write_meter_csv(f, result.meter);
  }
  {
    auto f = open_out(dir / "half_hourly.csv");
    write_half_hourly_csv(f, result.meter);
  }
  {
    auto f = open_out(dir / "betas.csv");
    write_beta_csv(f, betas);
  }
  {
    auto f = open_out(dir / "events.csv");
    result.log.write_csv(f);
  }
  const std::vector<MeterSeries> one{result.meter};
  json summary = {{"scenario", to_json(scenario)},
                  {"meter_wh", meter_wh},
                  {"reconstructed_wh", reconstruct_total(betas)},
                  {"c_base_wh", betas.c_base_wh},
                  {"appliances", betas.entries.size()},
                  {"summary", summarize(one)}};
  auto f = open_out(dir / "summary.json");
  f << summary.dump(2) << '\n';
  std::cout << "simulated " << scenario.horizon_days << " days, " << meter_wh / 1000.0 << " kWh -> "
            << dir.string() << '\n';
  return 0;
}

struct ExperimentArgs {
  std::string name;
  std::string config;
  std::optional<std::size_t> reps;
  std::string out;
};

int experiment(const ExperimentArgs& args) {
  const auto name = experiment_from_string(args.name);
  if (!name) throw SimError(ErrorCode::InvalidScenario, "--name: unknown experiment '" + args.name + "'");
  const fs::path config_path = args.config;
  auto spec = experiment_spec_from_json(*name, read_json(config_path), config_path.parent_path());
  if (args.reps) spec.n_reps = *args.reps;
  spec.out_dir = args.out.empty() ? fs::path("out") / args.name : fs::path(args.out);
  const auto result = run_experiment(spec);
  std::cout << result.summary["results"].dump(2) << '\n';
  for (const auto& f : result.files) std::cout << "wrote " << f.string() << '\n';
  return 0;
}

int validate(const std::string& plan_path) {
  const auto plan = parse_building_plan(read_json(plan_path));
  const auto issues = validate_plan(plan);
  if (issues.empty()) {
    const auto t = plan.totals();
    std::cout << "ok: " << t.rooms << " rooms, " << t.lights << " lights, " << t.computers << " computers, "
              << t.users << " occupants\n";
    return 0;
  }
  for (const auto& i : issues) std::cerr << to_string(i.code) << ": " << i.message << '\n';
  return kExitConfig;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Office electricity agent-based simulator"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Run one scenario and write meter, betas and events");
  sim_cmd->add_option("--scenario", sim.scenario, "Scenario JSON")->required();
  sim_cmd->add_option("--plan", sim.plan, "Building plan JSON")->required();
  sim_cmd->add_option("--seed", sim.seed, "Override the scenario seed");
  sim_cmd->add_option("--days", sim.days, "Override the horizon in days");
  sim_cmd->add_option("--out", sim.out, "Output directory")->capture_default_str();

  ExperimentArgs exp;
  auto* exp_cmd = app.add_subcommand("experiment", "Run a replicated experiment");
  exp_cmd->add_option("--name", exp.name, "baseline_automated | staff_vs_automated | contact_sweep | category_breakdown")
      ->required();
  exp_cmd->add_option("--config", exp.config, "Experiment config JSON")->required();
  exp_cmd->add_option("--reps", exp.reps, "Override the replication count");
  exp_cmd->add_option("--out", exp.out, "Output directory (default out/<name>)");

  std::string plan_path;
  auto* val_cmd = app.add_subcommand("validate", "Check a building plan and list every issue");
  val_cmd->add_option("--plan", plan_path, "Building plan JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*sim_cmd) return simulate(sim);
    if (*exp_cmd) return experiment(exp);
    return validate(plan_path);
  } catch (const SimError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return is_config_error(e.code()) ? kExitConfig : kExitRuntime;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
