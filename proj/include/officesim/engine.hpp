#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "officesim/behavior.hpp"
#include "officesim/building.hpp"
#include "officesim/event_log.hpp"
#include "officesim/metering.hpp"
#include "officesim/population.hpp"
#include "officesim/social.hpp"

namespace officesim {

enum class LightingStrategy { Automated, StaffControlled };

std::string_view to_string(LightingStrategy s);

struct Scenario {
  LightingStrategy lighting_strategy = LightingStrategy::Automated;
  // awareness above which users switch computers off while working
  double threshold = 50.0;
  // energy emails per user per day
  double contact_rate = 0.0;
  // awareness points gained per email received
  double awareness_delta = 1.0;
  double base_load_w = 3000.0;
  int horizon_days = 7;
  std::uint64_t seed = 1;
  int tick_minutes = 1;
  // whole weeks simulated and discarded before recording starts
  int warmup_weeks = 0;
  BehaviorParams behavior;

  std::int64_t horizon_ticks() const { return static_cast<std::int64_t>(horizon_days) * kMinutesPerDay; }
  // Throws InvalidScenario.
  void validate() const;
};

Scenario scenario_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const Scenario& s);

// Mutable simulation state. Users are held in ascending id order; network
// node i is users[i].
struct World {
  SimTime clock;
  std::vector<UserAgent> users;
  std::vector<int> user_ids;
  std::vector<LightState> lights;
  std::vector<std::size_t> light_room;
  std::vector<ComputerState> computers;
  std::vector<std::size_t> computer_room;
  std::vector<RoomKind> room_kind;
  std::vector<std::size_t> room_occupants;
  std::vector<std::size_t> facilities;
};

struct RunOptions {
  // record user state changes, departures, contacts and schedules too
  bool record_user_events = false;
  // called after every recorded tick, once metering has sampled it
  std::function<void(const World&, const PowerSample&)> on_tick;
};

struct RunResult {
  MeterSeries meter;
  EventLog log;
};

// Builds the initial world: everything off, everyone out. Occupants listed in
// the plan keep their seats; roster users the plan does not seat are assigned
// with the scenario seed.
World build_world(const Scenario& scenario, const BuildingPlan& plan, const Roster& roster);

// Tick pipeline: schedules at 00:00, then per tick (1) contacts, (2) users by
// ascending id, (3) computers, (4) lights, (5) meter sample. Errors carry the
// tick and agent.
RunResult run(const Scenario& scenario, const BuildingPlan& plan, const Roster& roster,
              const SocialNetwork& network, const RunOptions& options = {});

// Everything a replication needs besides its seed.
struct ModelInputs {
  BuildingPlan plan;
  PopulationSpec population;
  int network_k = 4;
  double network_p_rewire = 0.1;
};

// Replication with seed s: roster, occupant assignment and network are all
// generated from s, then run with scenario.seed = s.
RunResult run_replication(Scenario scenario, const ModelInputs& inputs, std::uint64_t seed,
                          const RunOptions& options = {});

// Replication i uses seed derive_seed(seed_base, i). Results are indexed by
// replication, independent of execution order. `threads` = 0 picks the
// hardware concurrency.
std::vector<MeterSeries> run_replications(const Scenario& scenario, const ModelInputs& inputs,
                                          std::size_t n_reps, std::uint64_t seed_base,
                                          unsigned threads = 0);

}  // namespace officesim
