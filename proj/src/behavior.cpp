#include "officesim/behavior.hpp"

#include <cmath>
#include <string>

#include "officesim/error.hpp"

namespace officesim {

namespace {

enum ScheduleDraw : std::uint32_t {
  kDrawPresent = 0,
  kDrawArrival = 1,
  kDrawLeave = 2,
  kDrawMidday = 3,
  kDrawMiddayStart = 4,
  kDrawMiddayLength = 5,
};

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

void BehaviorParams::validate() const {
  auto bad = [](const std::string& what) { throw SimError(ErrorCode::InvalidScenario, what); };
  if (corridor_walk_minutes < 1) bad("behavior.corridor_walk_minutes must be >= 1");
  if (computer_start_minutes < 0) bad("behavior.computer_start_minutes must be >= 0");
  if (!(p_standby >= 0 && p_standby <= 1)) bad("behavior.p_standby outside [0,1]");
  if (!(excursions_per_day >= 0)) bad("behavior.excursions_per_day must be >= 0");
  if (facility_min_minutes < 1 || facility_max_minutes < facility_min_minutes) {
    bad("behavior.facility_min/max_minutes invalid");
  }
  if (!(p_midday_long_leave >= 0 && p_midday_long_leave <= 1)) {
    bad("behavior.p_midday_long_leave outside [0,1]");
  }
  if (midday_leave_min_minutes < long_leave_minutes ||
      midday_leave_max_minutes < midday_leave_min_minutes) {
    bad("behavior.midday_leave_min/max_minutes invalid");
  }
  if (light_timeout_minutes < 1) bad("behavior.light_timeout_minutes must be >= 1");
}

std::string_view to_string(LeaveKind kind) {
  return kind == LeaveKind::Temporary ? "temporary" : "long";
}

SwitchProbabilities awareness_to_probabilities(double awareness) {
  if (!(awareness >= 0.0 && awareness <= 100.0)) {
    throw SimError(ErrorCode::OutOfRange, "awareness " + std::to_string(awareness) + " outside [0,100]");
  }
  const auto table = awareness_table();
  // table rows run from the highest band down
  for (const auto& row : table) {
    if (awareness >= row.awareness_lo) return {row.p_switch_off, row.p_email};
  }
  return {table.back().p_switch_off, table.back().p_email};
}

std::optional<DailySchedule> sample_daily_schedule(const EnergyUser& user, std::int64_t day,
                                                   double p_weekend, const BehaviorParams& params,
                                                   const CounterRng& rng) {
  const auto agent = static_cast<std::uint32_t>(user.id);
  const auto counter = static_cast<std::uint64_t>(day);
  const bool weekend = SimTime(day * kMinutesPerDay).is_weekend();
  if (weekend && rng.uniform(Stream::Schedule, agent, counter, kDrawPresent) >= p_weekend) {
    return std::nullopt;
  }

  const auto& w = work_stereotype(user.work);
  DailySchedule s;
  s.arrival = static_cast<int>(
      rng.uniform_int(Stream::Schedule, agent, counter, kDrawArrival, w.arrival_lo, w.arrival_hi));
  const int leave_lo = w.leave_from_arrival ? s.arrival : w.leave_lo;
  s.leave = static_cast<int>(
      rng.uniform_int(Stream::Schedule, agent, counter, kDrawLeave, leave_lo, w.leave_hi));

  if (rng.uniform(Stream::Schedule, agent, counter, kDrawMidday) < params.p_midday_long_leave &&
      s.leave > s.arrival) {
    const int start = static_cast<int>(
        rng.uniform_int(Stream::Schedule, agent, counter, kDrawMiddayStart, s.arrival, s.leave));
    const int length = static_cast<int>(rng.uniform_int(Stream::Schedule, agent, counter,
                                                        kDrawMiddayLength,
                                                        params.midday_leave_min_minutes,
                                                        params.midday_leave_max_minutes + 1));
    // only absences that end before the working day does
    if (start + length < s.leave) s.midday = MiddayLeave{start, length};
  }
  return s;
}

UserStateKind kind_of(const UserState& state) {
  return std::visit(overloaded{
                        [](const OutOfSchool&) { return UserStateKind::OutOfSchool; },
                        [](const InCorridor&) { return UserStateKind::InCorridor; },
                        [](const InOwnOffice& o) {
                          return o.activity == OfficeActivity::WorkingWithComputer
                                     ? UserStateKind::WorkingWithComputer
                                     : UserStateKind::WorkingWithoutComputer;
                        },
                        [](const InOtherRooms&) { return UserStateKind::InOtherRooms; },
                    },
                    state);
}

std::string_view to_string(UserStateKind kind) {
  switch (kind) {
    case UserStateKind::OutOfSchool: return "OutOfSchool";
    case UserStateKind::InCorridor: return "InCorridor";
    case UserStateKind::WorkingWithoutComputer: return "WorkingWithoutComputer";
    case UserStateKind::WorkingWithComputer: return "WorkingWithComputer";
    case UserStateKind::InOtherRooms: return "InOtherRooms";
  }
  return "?";
}

std::optional<std::size_t> UserAgent::location() const {
  return std::visit(overloaded{
                        [](const OutOfSchool&) -> std::optional<std::size_t> { return std::nullopt; },
                        [this](const InCorridor&) { return corridor; },
                        [this](const InOwnOffice&) -> std::optional<std::size_t> { return office; },
                        [](const InOtherRooms& r) -> std::optional<std::size_t> { return r.room; },
                    },
                    state);
}

void UserAgent::begin_day(std::optional<DailySchedule> schedule) {
  today = schedule;
  midday_taken = false;
}

std::string_view to_string(ComputerPower power) {
  switch (power) {
    case ComputerPower::Off: return "Off";
    case ComputerPower::On: return "On";
    case ComputerPower::StandBy: return "StandBy";
  }
  return "?";
}

double power_w(ComputerPower power) {
  switch (power) {
    case ComputerPower::Off: return 0.0;
    case ComputerPower::On: return kComputerOnW;
    case ComputerPower::StandBy: return kComputerStandByW;
  }
  return 0.0;
}

std::vector<BehaviorEvent> step_user(UserAgent& user, SimTime now, const WorldView& world,
                                     double threshold, const BehaviorParams& params,
                                     const CounterRng& rng) {
  std::vector<BehaviorEvent> events;
  const int id = user.profile.id;
  const auto agent = static_cast<std::uint32_t>(id);
  const std::int64_t t = now.minute_of_sim();
  const int minute = now.minute_of_day();
  auto draw = [&](std::uint32_t slot) {
    return rng.uniform(Stream::User, agent, static_cast<std::uint64_t>(t), slot);
  };

  if (user.computer) {
    if (*user.computer >= world.computer_room.size() ||
        world.computer_room[*user.computer] != user.office) {
      throw SimError(ErrorCode::InconsistentState,
                     "user " + std::to_string(id) + " owns computer " +
                         std::to_string(*user.computer) + " outside its office");
    }
  }

  const UserStateKind before = kind_of(user.state);
  auto transition = [&](UserState next) {
    user.state = next;
    events.push_back({id, StateChanged{before, kind_of(user.state)}});
  };
  auto request = [&](ComputerPower target) {
    if (user.computer) events.push_back({id, ComputerRequest{*user.computer, target}});
  };
  auto leave_office = [&](LeaveKind kind, Heading heading, std::size_t facility = 0) {
    if (kind == LeaveKind::Long) {
      const double p_off = awareness_to_probabilities(user.profile.awareness).p_switch_off;
      if (user.computer && draw(kDrawLeaveComputer) < p_off) request(ComputerPower::Off);
    }
    user.pending = kind;
    events.push_back({id, LeftOffice{user.office, kind}});
    transition(InCorridor{t, heading, facility});
  };

  std::visit(
      overloaded{
          [&](const OutOfSchool&) {
            if (!user.today) return;
            if (user.return_at) {
              if (t < *user.return_at) return;
              user.return_at.reset();
              // a long absence that overruns the working day ends it
              if (minute < user.today->leave) transition(InCorridor{t, Heading::ToOffice});
              return;
            }
            if (minute == user.today->arrival) transition(InCorridor{t, Heading::ToOffice});
          },
          [&](const InCorridor& c) {
            if (t - c.since < params.corridor_walk_minutes) return;
            switch (c.heading) {
              case Heading::ToOffice:
                user.pending.reset();
                transition(InOwnOffice{OfficeActivity::WorkingWithoutComputer, t});
                break;
              case Heading::ToFacility: {
                const auto stay = rng.uniform_int(Stream::User, agent, static_cast<std::uint64_t>(t),
                                                  kDrawFacilityStay, params.facility_min_minutes,
                                                  params.facility_max_minutes + 1);
                transition(InOtherRooms{c.facility, t, t + stay});
                break;
              }
              case Heading::ToExit:
                transition(OutOfSchool{});
                break;
            }
          },
          [&](const InOtherRooms& r) {
            if (t >= r.return_deadline) transition(InCorridor{t, Heading::ToOffice});
          },
          [&](const InOwnOffice& o) {
            const auto& today = user.today;
            if (!today || minute >= today->leave) {
              leave_office(LeaveKind::Long, Heading::ToExit);
              return;
            }
            if (today->midday && !user.midday_taken && minute >= today->midday->start) {
              user.midday_taken = true;
              user.return_at = t + today->midday->duration;
              leave_office(LeaveKind::Long, Heading::ToExit);
              return;
            }
            const int working_minutes = today->leave - today->arrival;
            if (!world.facilities.empty() && working_minutes > 0 && params.excursions_per_day > 0 &&
                draw(kDrawExcursion) < params.excursions_per_day / working_minutes) {
              const auto pick = rng.uniform_int(Stream::User, agent, static_cast<std::uint64_t>(t),
                                                kDrawFacility, 0,
                                                static_cast<std::int64_t>(world.facilities.size()));
              leave_office(LeaveKind::Temporary, Heading::ToFacility,
                           world.facilities[static_cast<std::size_t>(pick)]);
              return;
            }
            if (!user.computer) return;
            if (o.activity == OfficeActivity::WorkingWithoutComputer) {
              if (t - o.activity_since >= params.computer_start_minutes) {
                request(ComputerPower::On);
                transition(InOwnOffice{OfficeActivity::WorkingWithComputer, t});
              }
              return;
            }
            if (draw(kDrawStandby) < params.p_standby) {
              request(ComputerPower::StandBy);
              transition(InOwnOffice{OfficeActivity::WorkingWithoutComputer, t});
              return;
            }
            const double p_off = awareness_to_probabilities(user.profile.awareness).p_switch_off;
            if (user.profile.awareness > threshold && draw(kDrawSwitchOff) < p_off) {
              request(ComputerPower::Off);
              transition(InOwnOffice{OfficeActivity::WorkingWithoutComputer, t});
            }
          },
      },
      user.state);
  return events;
}

LightState step_light(LightState light, bool occupied, std::optional<Vacating> vacating, double u,
                      const BehaviorParams& params) {
  if (occupied) {
    light.on = true;
    light.vacancy_timer = 0;
    light.was_occupied = true;
    return light;
  }
  const bool just_vacated = light.was_occupied;
  light.was_occupied = false;
  light.vacancy_timer = just_vacated ? 0 : light.vacancy_timer + 1;
  if (!light.on) return light;

  if (light.control == LightControl::SensorAutomated) {
    if (light.vacancy_timer >= params.light_timeout_minutes) light.on = false;
    return light;
  }
  if (just_vacated && vacating && vacating->kind == LeaveKind::Long &&
      u < awareness_to_probabilities(vacating->awareness).p_switch_off) {
    light.on = false;
  }
  return light;
}

ComputerState step_computer(ComputerState computer, std::optional<OwnerCommand> command) {
  if (!command) return computer;
  if (!computer.owner || *computer.owner != command->user_id) {
    throw SimError(ErrorCode::NotOwner,
                   "user " + std::to_string(command->user_id) + " does not own this computer");
  }
  computer.state = command->target;
  return computer;
}

}  // namespace officesim
