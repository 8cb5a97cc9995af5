#include "officesim/engine.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <unordered_map>

#include "officesim/error.hpp"

namespace officesim {

using nlohmann::json;

std::string_view to_string(LightingStrategy s) {
  return s == LightingStrategy::Automated ? "automated" : "staff_controlled";
}

void Scenario::validate() const {
  auto bad = [](const std::string& what) { throw SimError(ErrorCode::InvalidScenario, what); };
  if (!(threshold >= 0.0 && threshold <= 100.0)) bad("scenario.threshold outside [0,100]");
  if (!(contact_rate >= 0.0)) bad("scenario.contact_rate must be >= 0");
  if (!(awareness_delta >= 0.0)) bad("scenario.awareness_delta must be >= 0");
  if (!(base_load_w >= 0.0)) bad("scenario.base_load_w must be >= 0");
  if (horizon_days < 1) bad("scenario.horizon_days must be >= 1");
  if (tick_minutes != 1) bad("scenario.tick_minutes is fixed at 1");
  if (warmup_weeks < 0) bad("scenario.warmup_weeks must be >= 0");
  behavior.validate();
}

namespace {

template <class T>
void read(const json& obj, const char* key, T& out, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception&) {
    throw SimError(ErrorCode::InvalidScenario, where + "." + key + ": wrong type");
  }
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known, const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (std::none_of(known.begin(), known.end(), [&](const char* k) { return key == k; })) {
      throw SimError(ErrorCode::InvalidScenario, where + "." + key + ": unknown key");
    }
  }
}

}  // namespace

Scenario scenario_from_json(const json& doc) {
  if (!doc.is_object()) throw SimError(ErrorCode::InvalidScenario, "scenario: expected an object");
  reject_unknown(doc,
                 {"lighting_strategy", "threshold", "contact_rate", "awareness_delta", "base_load_w",
                  "horizon_days", "seed", "tick_minutes", "warmup_weeks", "behavior"},
                 "scenario");
  Scenario s;
  if (doc.contains("lighting_strategy")) {
    const auto& v = doc["lighting_strategy"];
    const std::string text = v.is_string() ? v.get<std::string>() : "";
    if (text == "automated") {
      s.lighting_strategy = LightingStrategy::Automated;
    } else if (text == "staff_controlled") {
      s.lighting_strategy = LightingStrategy::StaffControlled;
    } else {
      throw SimError(ErrorCode::InvalidScenario,
                     "scenario.lighting_strategy: expected \"automated\" or \"staff_controlled\"");
    }
  }
  read(doc, "threshold", s.threshold, "scenario");
  read(doc, "contact_rate", s.contact_rate, "scenario");
  read(doc, "awareness_delta", s.awareness_delta, "scenario");
  read(doc, "base_load_w", s.base_load_w, "scenario");
  read(doc, "horizon_days", s.horizon_days, "scenario");
  read(doc, "seed", s.seed, "scenario");
  read(doc, "tick_minutes", s.tick_minutes, "scenario");
  read(doc, "warmup_weeks", s.warmup_weeks, "scenario");
  if (doc.contains("behavior")) {
    const auto& b = doc["behavior"];
    const std::string where = "scenario.behavior";
    if (!b.is_object()) throw SimError(ErrorCode::InvalidScenario, where + ": expected an object");
    reject_unknown(b,
                   {"corridor_walk_minutes", "computer_start_minutes", "p_standby",
                    "excursions_per_day", "facility_min_minutes", "facility_max_minutes",
                    "p_midday_long_leave", "midday_leave_min_minutes", "midday_leave_max_minutes",
                    "light_timeout_minutes", "long_leave_minutes"},
                   where);
    auto& p = s.behavior;
    read(b, "corridor_walk_minutes", p.corridor_walk_minutes, where);
    read(b, "computer_start_minutes", p.computer_start_minutes, where);
    read(b, "p_standby", p.p_standby, where);
    read(b, "excursions_per_day", p.excursions_per_day, where);
    read(b, "facility_min_minutes", p.facility_min_minutes, where);
    read(b, "facility_max_minutes", p.facility_max_minutes, where);
    read(b, "p_midday_long_leave", p.p_midday_long_leave, where);
    read(b, "midday_leave_min_minutes", p.midday_leave_min_minutes, where);
    read(b, "midday_leave_max_minutes", p.midday_leave_max_minutes, where);
    read(b, "light_timeout_minutes", p.light_timeout_minutes, where);
    read(b, "long_leave_minutes", p.long_leave_minutes, where);
  }
  s.validate();
  return s;
}

json to_json(const Scenario& s) {
  const auto& p = s.behavior;
  return {{"lighting_strategy", std::string(to_string(s.lighting_strategy))},
          {"threshold", s.threshold},
          {"contact_rate", s.contact_rate},
          {"awareness_delta", s.awareness_delta},
          {"base_load_w", s.base_load_w},
          {"horizon_days", s.horizon_days},
          {"seed", s.seed},
          {"tick_minutes", s.tick_minutes},
          {"warmup_weeks", s.warmup_weeks},
          {"behavior",
           {{"corridor_walk_minutes", p.corridor_walk_minutes},
            {"computer_start_minutes", p.computer_start_minutes},
            {"p_standby", p.p_standby},
            {"excursions_per_day", p.excursions_per_day},
            {"facility_min_minutes", p.facility_min_minutes},
            {"facility_max_minutes", p.facility_max_minutes},
            {"p_midday_long_leave", p.p_midday_long_leave},
            {"midday_leave_min_minutes", p.midday_leave_min_minutes},
            {"midday_leave_max_minutes", p.midday_leave_max_minutes},
            {"light_timeout_minutes", p.light_timeout_minutes},
            {"long_leave_minutes", p.long_leave_minutes}}}};
}

World build_world(const Scenario& scenario, const BuildingPlan& plan, const Roster& roster) {
  World w;
  std::unordered_map<std::string, std::size_t> room_index;
  std::unordered_map<std::string, std::size_t> computer_index;
  std::vector<std::size_t> corridors;
  for (std::size_t r = 0; r < plan.rooms.size(); ++r) {
    const auto& room = plan.rooms[r];
    room_index.emplace(room.id, r);
    w.room_kind.push_back(room.kind);
    if (room.kind == RoomKind::Corridor) corridors.push_back(r);
    if (room.kind == RoomKind::Facility) w.facilities.push_back(r);
    const bool staff = scenario.lighting_strategy == LightingStrategy::StaffControlled &&
                       room.kind == RoomKind::Office;
    for (std::size_t i = 0; i < room.light_ids.size(); ++i) {
      LightState light;
      light.control = staff ? LightControl::StaffSwitched : LightControl::SensorAutomated;
      w.lights.push_back(light);
      w.light_room.push_back(r);
    }
    for (const auto& pc : room.computer_ids) {
      computer_index.emplace(pc, w.computers.size());
      w.computers.emplace_back();
      w.computer_room.push_back(r);
    }
  }
  w.room_occupants.assign(plan.rooms.size(), 0);

  // corridor each office's occupants walk through
  std::vector<std::optional<std::size_t>> office_corridor(plan.rooms.size());
  std::size_t office_ordinal = 0;
  for (std::size_t r = 0; r < plan.rooms.size(); ++r) {
    const auto& room = plan.rooms[r];
    if (room.kind == RoomKind::Corridor) continue;
    if (room.corridor_id) {
      office_corridor[r] = room_index.at(*room.corridor_id);
    } else if (!corridors.empty()) {
      office_corridor[r] = corridors[office_ordinal % corridors.size()];
    }
    if (room.kind == RoomKind::Office) ++office_ordinal;
  }

  auto users = roster.users;
  std::sort(users.begin(), users.end(), [](const EnergyUser& a, const EnergyUser& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < users.size(); ++i) {
    if (users[i].id == users[i - 1].id) {
      throw SimError(ErrorCode::DuplicateId, "roster lists user " + std::to_string(users[i].id) + " twice");
    }
  }

  std::unordered_map<int, Occupant> seats;
  for (const auto& occ : plan.occupants) seats.emplace(occ.user_id, occ);
  std::vector<int> unseated;
  for (const auto& u : users) {
    if (!seats.count(u.id)) unseated.push_back(u.id);
  }
  if (!unseated.empty()) {
    std::set<std::string> owned;
    for (const auto& u : users) {
      auto it = seats.find(u.id);
      if (it != seats.end() && it->second.computer_id) owned.insert(*it->second.computer_id);
    }
    for (auto occ : assign_occupants(plan, unseated, scenario.seed, CapacityRule::Overflow)) {
      if (occ.computer_id && !owned.insert(*occ.computer_id).second) occ.computer_id.reset();
      seats.emplace(occ.user_id, occ);
    }
  }

  for (const auto& profile : users) {
    const auto& seat = seats.at(profile.id);
    UserAgent agent;
    agent.profile = profile;
    auto office = room_index.find(seat.office_id);
    if (office == room_index.end() || plan.rooms[office->second].kind != RoomKind::Office) {
      throw SimError(ErrorCode::OccupantInNonOffice,
                     "user " + std::to_string(profile.id) + " seated in '" + seat.office_id + "'");
    }
    agent.office = office->second;
    agent.corridor = office_corridor[agent.office];
    if (seat.computer_id) {
      auto pc = computer_index.find(*seat.computer_id);
      if (pc == computer_index.end()) {
        throw SimError(ErrorCode::DanglingApplianceRef, "computer '" + *seat.computer_id + "' not in plan");
      }
      if (w.computers[pc->second].owner) {
        throw SimError(ErrorCode::DuplicateId, "computer '" + *seat.computer_id + "' has two owners");
      }
      agent.computer = pc->second;
      w.computers[pc->second].owner = profile.id;
    }
    w.users.push_back(std::move(agent));
    w.user_ids.push_back(profile.id);
  }
  return w;
}

namespace {

std::string tick_context(std::int64_t tick, std::string_view agent) {
  return " (tick " + std::to_string(tick) + ", " + std::string(agent) + ")";
}

}  // namespace

RunResult run(const Scenario& scenario, const BuildingPlan& plan, const Roster& roster,
              const SocialNetwork& network, const RunOptions& options) {
  scenario.validate();
  World w = build_world(scenario, plan, roster);
  const CounterRng rng(scenario.seed);
  const auto& params = scenario.behavior;
  const bool social = scenario.contact_rate > 0.0;
  if (social && network.size() != w.users.size()) {
    throw SimError(ErrorCode::InvalidParams, "network has " + std::to_string(network.size()) +
                                                 " nodes for " + std::to_string(w.users.size()) + " users");
  }

  RunResult result;
  EventLog& log = result.log;
  const std::int64_t warmup = static_cast<std::int64_t>(scenario.warmup_weeks) * kMinutesPerWeek;
  const std::int64_t horizon = scenario.horizon_ticks();
  log.horizon_ticks = horizon;
  log.base_load_w = scenario.base_load_w;
  for (const auto& room : plan.rooms) {
    log.room_ids.push_back(room.id);
    log.light_ids.insert(log.light_ids.end(), room.light_ids.begin(), room.light_ids.end());
    log.computer_ids.insert(log.computer_ids.end(), room.computer_ids.begin(), room.computer_ids.end());
  }
  log.light_room = w.light_room;
  log.events.reserve(static_cast<std::size_t>(horizon) * 4);
  result.meter.base_w.reserve(static_cast<std::size_t>(horizon));
  result.meter.lights_w.reserve(static_cast<std::size_t>(horizon));
  result.meter.computers_w.reserve(static_cast<std::size_t>(horizon));

  const WorldView view{w.facilities, w.computer_room};
  std::vector<std::pair<std::size_t, OwnerCommand>> requests;
  std::vector<std::optional<Vacating>> vacating(plan.rooms.size());
  std::vector<std::size_t> occupants(plan.rooms.size());

  for (std::int64_t t = 0; t < warmup + horizon; ++t) {
    const SimTime now(t);
    w.clock = now;
    const bool recording = t >= warmup;
    const std::int64_t rt = t - warmup;
    const bool user_log = recording && options.record_user_events;

    if (t == warmup) {
      for (const auto& l : w.lights) log.initial_light_on.push_back(l.on);
      for (const auto& c : w.computers) log.initial_computer.push_back(c.state);
    }

    if (now.minute_of_day() == 0) {
      for (auto& u : w.users) {
        auto schedule = sample_daily_schedule(u.profile, now.day_index(), roster.p_weekend, params, rng);
        if (user_log) {
          log.record(rt, AgentKind::User, static_cast<std::uint32_t>(u.profile.id), EventKind::Schedule,
                     schedule ? schedule->arrival * 1440 + schedule->leave : -1);
        }
        u.begin_day(schedule);
      }
    }

    // (1) contacts
    if (social) {
      for (std::size_t i = 0; i < w.users.size(); ++i) {
        for (const auto& c : emit_contacts(w.users[i], i, scenario.contact_rate, now, network, w.user_ids, rng)) {
          auto it = std::lower_bound(w.user_ids.begin(), w.user_ids.end(), c.recipient);
          auto& recipient = w.users[static_cast<std::size_t>(it - w.user_ids.begin())];
          recipient.profile = apply_contact(recipient.profile, scenario.awareness_delta);
          if (user_log) {
            log.record(rt, AgentKind::User, static_cast<std::uint32_t>(c.sender), EventKind::Contact, c.recipient);
          }
        }
      }
    }

    // (2) users
    requests.clear();
    std::fill(vacating.begin(), vacating.end(), std::nullopt);
    for (auto& u : w.users) {
      std::vector<BehaviorEvent> events;
      try {
        events = step_user(u, now, view, scenario.threshold, params, rng);
      } catch (const SimError& e) {
        throw SimError(e.code(), e.what() + tick_context(t, "user:" + std::to_string(u.profile.id)));
      }
      for (const auto& ev : events) {
        if (const auto* sc = std::get_if<StateChanged>(&ev.what)) {
          if (user_log) {
            log.record(rt, AgentKind::User, static_cast<std::uint32_t>(ev.user_id), EventKind::UserState,
                       static_cast<std::int32_t>(sc->to));
          }
        } else if (const auto* cr = std::get_if<ComputerRequest>(&ev.what)) {
          requests.push_back({cr->computer, OwnerCommand{ev.user_id, cr->target}});
        } else if (const auto* left = std::get_if<LeftOffice>(&ev.what)) {
          vacating[left->office] = Vacating{u.profile.awareness, left->kind};
          if (user_log) {
            log.record(rt, AgentKind::User, static_cast<std::uint32_t>(ev.user_id), EventKind::LeftOffice,
                       static_cast<std::int32_t>(left->kind));
          }
        }
      }
    }

    // (3) computers
    for (const auto& [index, command] : requests) {
      const auto before = w.computers[index].state;
      try {
        w.computers[index] = step_computer(w.computers[index], command);
      } catch (const SimError& e) {
        throw SimError(e.code(), e.what() + tick_context(t, "computer:" + log.computer_ids[index]));
      }
      if (recording && w.computers[index].state != before) {
        log.record(rt, AgentKind::Computer, static_cast<std::uint32_t>(index), EventKind::Computer,
                   static_cast<std::int32_t>(w.computers[index].state));
      }
    }

    // (4) occupancy and lights
    std::fill(occupants.begin(), occupants.end(), 0);
    for (const auto& u : w.users) {
      if (auto room = u.location()) ++occupants[*room];
    }
    for (std::size_t r = 0; r < occupants.size(); ++r) {
      const bool was = w.room_occupants[r] > 0;
      const bool is = occupants[r] > 0;
      if (recording && was != is) {
        log.record(rt, AgentKind::Room, static_cast<std::uint32_t>(r),
                   is ? EventKind::RoomOccupied : EventKind::RoomVacated, static_cast<std::int32_t>(occupants[r]));
      }
    }
    w.room_occupants = occupants;
    for (std::size_t i = 0; i < w.lights.size(); ++i) {
      const auto room = w.light_room[i];
      const bool occupied = occupants[room] > 0;
      const bool vacated = !occupied && vacating[room];
      const double u = vacated ? rng.uniform(Stream::Room, static_cast<std::uint32_t>(room),
                                             static_cast<std::uint64_t>(t), 0)
                               : 1.0;
      const bool before = w.lights[i].on;
      w.lights[i] = step_light(w.lights[i], occupied, vacated ? vacating[room] : std::nullopt, u, params);
      if (recording && w.lights[i].on != before) {
        log.record(rt, AgentKind::Light, static_cast<std::uint32_t>(i), EventKind::Light, w.lights[i].on ? 1 : 0);
      }
    }

    // (5) meter
    if (recording) {
      const auto sample = instantaneous_power(w.lights, w.computers, scenario.base_load_w);
      result.meter.push(sample);
      if (options.on_tick) options.on_tick(w, sample);
    }
  }
  return result;
}

RunResult run_replication(Scenario scenario, const ModelInputs& inputs, std::uint64_t seed,
                          const RunOptions& options) {
  scenario.seed = seed;
  const Roster roster = generate_population(inputs.population, seed);
  const std::size_t n = roster.users.size();
  const SocialNetwork network = n > 2 * static_cast<std::size_t>(inputs.network_k)
                                    ? build_small_world(n, inputs.network_k, inputs.network_p_rewire, seed)
                                    : SocialNetwork(n);
  return run(scenario, inputs.plan, roster, network, options);
}

std::vector<MeterSeries> run_replications(const Scenario& scenario, const ModelInputs& inputs,
                                          std::size_t n_reps, std::uint64_t seed_base, unsigned threads) {
  if (n_reps < 1) throw SimError(ErrorCode::InvalidParams, "n_reps must be >= 1");
  std::vector<MeterSeries> out(n_reps);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n_reps));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < n_reps; i = next++) {
      try {
        out[i] = run_replication(scenario, inputs, derive_seed(seed_base, i)).meter;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace officesim
