#include <doctest.h>

#include "officesim/behavior.hpp"
#include "officesim/error.hpp"

using namespace officesim;

namespace {

struct Fixture {
  // room 0 office, room 1 corridor, room 2 facility; computer 0 in the office
  std::vector<std::size_t> facilities{2};
  std::vector<std::size_t> computer_room{0};
  WorldView view{facilities, computer_room};
  BehaviorParams params;
  CounterRng rng{1};

  UserAgent user(double awareness, int arrival = 480, int leave = 1020) {
    UserAgent u;
    u.profile.id = 3;
    u.profile.awareness = awareness;
    u.office = 0;
    u.corridor = 1;
    u.computer = 0;
    u.begin_day(DailySchedule{arrival, leave, std::nullopt});
    return u;
  }

  std::vector<BehaviorEvent> step(UserAgent& u, std::int64_t t, double threshold = 50.0) {
    return step_user(u, SimTime(t), view, threshold, params, rng);
  }
};

template <class T>
std::vector<T> events_of(const std::vector<BehaviorEvent>& events) {
  std::vector<T> out;
  for (const auto& e : events) {
    if (const auto* p = std::get_if<T>(&e.what)) out.push_back(*p);
  }
  return out;
}

}  // namespace

TEST_CASE("awareness bands") {
  CHECK(awareness_to_probabilities(97) == SwitchProbabilities{0.95, 0.9});
  CHECK(awareness_to_probabilities(0) == SwitchProbabilities{0.2, 0.05});
  CHECK(awareness_to_probabilities(70) == SwitchProbabilities{0.7, 0.6});
  CHECK(awareness_to_probabilities(69.999) == SwitchProbabilities{0.4, 0.2});
  CHECK(awareness_to_probabilities(95) == SwitchProbabilities{0.95, 0.9});
  CHECK(awareness_to_probabilities(100) == SwitchProbabilities{0.95, 0.9});
  CHECK(awareness_to_probabilities(29.99) == SwitchProbabilities{0.2, 0.05});
  CHECK_THROWS_AS(awareness_to_probabilities(-0.1), SimError);
  CHECK_THROWS_AS(awareness_to_probabilities(100.1), SimError);
}

TEST_CASE("switch and email probabilities never fall as awareness rises") {
  SwitchProbabilities prev = awareness_to_probabilities(0);
  for (double a = 0.25; a <= 100.0; a += 0.25) {
    const auto p = awareness_to_probabilities(a);
    CHECK(p.p_switch_off >= prev.p_switch_off);
    CHECK(p.p_email >= prev.p_email);
    prev = p;
  }
}

TEST_CASE("daily schedules respect stereotype windows") {
  const BehaviorParams params;
  const CounterRng rng(17);
  for (int id = 0; id < 400; ++id) {
    EnergyUser eb{id, WorkKind::EarlyBird, AwarenessKind::BigUser, 10};
    const auto s = sample_daily_schedule(eb, 0, 0.02, params, rng);  // Monday
    REQUIRE(s);
    CHECK(s->arrival >= 5 * 60);
    CHECK(s->arrival < 9 * 60);
    CHECK(s->leave >= 17 * 60);
    CHECK(s->leave < 18 * 60);

    EnergyUser fw{id, WorkKind::FlexibleWorker, AwarenessKind::BigUser, 10};
    const auto f = sample_daily_schedule(fw, 4, 0.02, params, rng);  // Friday
    REQUIRE(f);
    CHECK(f->arrival >= 10 * 60);
    CHECK(f->arrival < 13 * 60);
    CHECK(f->leave >= f->arrival);
    CHECK(f->leave < 23 * 60);
    if (f->midday) {
      CHECK(f->midday->start >= f->arrival);
      CHECK(f->midday->start + f->midday->duration < f->leave);
    }
  }
}

TEST_CASE("weekend attendance follows p_weekend") {
  const BehaviorParams params;
  const CounterRng rng(17);
  int present = 0;
  for (int id = 0; id < 5000; ++id) {
    EnergyUser u{id, WorkKind::TimetableComplier, AwarenessKind::BigUser, 10};
    const double draw = rng.uniform(Stream::Schedule, static_cast<std::uint32_t>(id), 5, 0);
    const auto sat = sample_daily_schedule(u, 5, 0.02, params, rng);
    CHECK(sat.has_value() == (draw < 0.02));
    present += sat.has_value();
    CHECK_FALSE(sample_daily_schedule(u, 6, 0.0, params, rng));
    CHECK(sample_daily_schedule(u, 6, 1.0, params, rng));
  }
  CHECK(present > 50);
  CHECK(present < 150);
}

TEST_CASE("corridor walk: enter at 08:00, office at 08:02, lights on") {
  Fixture f;
  f.params.excursions_per_day = 0;
  auto u = f.user(10);
  CHECK(f.step(u, 479).empty());
  f.step(u, 480);
  CHECK(kind_of(u.state) == UserStateKind::InCorridor);
  CHECK(u.location() == std::optional<std::size_t>(1));
  f.step(u, 481);
  CHECK(kind_of(u.state) == UserStateKind::InCorridor);
  const auto events = f.step(u, 482);
  CHECK(kind_of(u.state) == UserStateKind::WorkingWithoutComputer);
  CHECK(u.location() == std::optional<std::size_t>(0));
  REQUIRE(events_of<StateChanged>(events).size() == 1);

  LightState light;
  light = step_light(light, u.location() == std::optional<std::size_t>(0), std::nullopt, 1.0, f.params);
  CHECK(light.on);
  CHECK(light.vacancy_timer == 0);

  // computer comes on after the start-up delay
  CHECK(events_of<ComputerRequest>(f.step(u, 483)).empty());
  const auto on = events_of<ComputerRequest>(f.step(u, 484));
  REQUIRE(on.size() == 1);
  CHECK(on[0].target == ComputerPower::On);
  CHECK(kind_of(u.state) == UserStateKind::WorkingWithComputer);
}

TEST_CASE("champion switches the computer off on a long leave when the draw allows") {
  Fixture f;
  f.params.excursions_per_day = 0;
  f.params.p_standby = 0;
  auto u = f.user(97, 480, 1020);
  u.state = InOwnOffice{OfficeActivity::WorkingWithComputer, 500};
  const auto t = SimTime::at(0, 17).minute_of_sim();
  const double draw = f.rng.uniform(Stream::User, 3, static_cast<std::uint64_t>(t), kDrawLeaveComputer);
  const auto events = f.step(u, t, 99.0);  // threshold above awareness: no in-office switch-off
  const auto left = events_of<LeftOffice>(events);
  REQUIRE(left.size() == 1);
  CHECK(left[0].kind == LeaveKind::Long);
  const auto req = events_of<ComputerRequest>(events);
  CHECK(req.size() == (draw < 0.95 ? 1u : 0u));
  if (!req.empty()) CHECK(req[0].target == ComputerPower::Off);
  CHECK(kind_of(u.state) == UserStateKind::InCorridor);
}

TEST_CASE("long-leave switch-off rate matches the stereotype probability") {
  Fixture f;
  f.params.excursions_per_day = 0;
  int off = 0;
  const int n = 4000;
  for (int d = 0; d < n; ++d) {
    auto u = f.user(97, 480, 1020);
    u.state = InOwnOffice{OfficeActivity::WorkingWithComputer, 0};
    off += !events_of<ComputerRequest>(f.step(u, d * kMinutesPerDay + 1020, 99.0)).empty();
  }
  CHECK(off / double(n) == doctest::Approx(0.95).epsilon(0.02));
}

TEST_CASE("temporary leave leaves the computer alone") {
  Fixture f;
  f.params.excursions_per_day = 1e9;  // force an excursion this tick
  auto u = f.user(97);
  u.state = InOwnOffice{OfficeActivity::WorkingWithComputer, 500};
  const auto events = f.step(u, 600);
  const auto left = events_of<LeftOffice>(events);
  REQUIRE(left.size() == 1);
  CHECK(left[0].kind == LeaveKind::Temporary);
  CHECK(events_of<ComputerRequest>(events).empty());

  // walk to the facility, stay, come back: no computer request throughout
  f.params.excursions_per_day = 0;
  std::int64_t entered = -1, returned = -1;
  for (std::int64_t t = 601; t < 640; ++t) {
    const auto before = kind_of(u.state);
    CHECK(events_of<ComputerRequest>(f.step(u, t)).empty());
    const auto after = kind_of(u.state);
    if (after == UserStateKind::InOtherRooms && before != after) entered = t;
    if (before == UserStateKind::InOtherRooms && after != before) returned = t;
    if (after == UserStateKind::WorkingWithoutComputer) break;
  }
  CHECK(entered == 602);
  CHECK(returned - entered >= 1);
  CHECK(returned - entered <= 10);
  CHECK(kind_of(u.state) == UserStateKind::WorkingWithoutComputer);
}

TEST_CASE("midday absence returns the user later the same day") {
  Fixture f;
  f.params.excursions_per_day = 0;
  auto u = f.user(10, 480, 1020);
  u.today->midday = MiddayLeave{720, 60};
  u.state = InOwnOffice{OfficeActivity::WorkingWithoutComputer, 600};
  u.computer.reset();
  f.step(u, 720);
  CHECK(kind_of(u.state) == UserStateKind::InCorridor);
  for (std::int64_t t = 721; t < 780; ++t) f.step(u, t);
  CHECK(kind_of(u.state) == UserStateKind::OutOfSchool);
  f.step(u, 780);
  CHECK(kind_of(u.state) == UserStateKind::InCorridor);
  f.step(u, 781);
  f.step(u, 782);
  CHECK(kind_of(u.state) == UserStateKind::WorkingWithoutComputer);
}

TEST_CASE("computer outside the owner's office is an inconsistent state") {
  Fixture f;
  auto u = f.user(10);
  u.office = 5;
  CHECK_THROWS_AS(f.step(u, 480), SimError);
}

TEST_CASE("automated light: vacated at t=100, off at t=120") {
  const BehaviorParams params;
  LightState light;
  for (int t = 0; t < 100; ++t) light = step_light(light, true, std::nullopt, 1.0, params);
  for (int t = 100; t < 120; ++t) {
    light = step_light(light, false, t == 100 ? std::optional<Vacating>(Vacating{10, LeaveKind::Long}) : std::nullopt,
                       0.0, params);
    INFO("t=" << t);
    CHECK(light.on);
  }
  light = step_light(light, false, std::nullopt, 0.0, params);
  CHECK_FALSE(light.on);
  // occupancy forces it back on
  light = step_light(light, true, std::nullopt, 1.0, params);
  CHECK(light.on);
  CHECK(light.vacancy_timer == 0);
}

TEST_CASE("staff-controlled light depends on the leaver") {
  const BehaviorParams params;
  LightState lit;
  lit.control = LightControl::StaffSwitched;
  lit = step_light(lit, true, std::nullopt, 1.0, params);

  // big user, draw at or above 0.2: stays on, and keeps burning
  auto stays = step_light(lit, false, Vacating{10, LeaveKind::Long}, 0.2, params);
  CHECK(stays.on);
  for (int i = 0; i < 500; ++i) stays = step_light(stays, false, std::nullopt, 0.0, params);
  CHECK(stays.on);

  CHECK_FALSE(step_light(lit, false, Vacating{10, LeaveKind::Long}, 0.19, params).on);
  CHECK(step_light(lit, false, Vacating{97, LeaveKind::Temporary}, 0.0, params).on);
  CHECK_FALSE(step_light(lit, false, Vacating{97, LeaveKind::Long}, 0.94, params).on);
}

TEST_CASE("computer transitions") {
  ComputerState pc{ComputerPower::Off, 7};
  CHECK(step_computer(pc, OwnerCommand{7, ComputerPower::On}).state == ComputerPower::On);
  ComputerState standby{ComputerPower::StandBy, 7};
  CHECK(step_computer(standby, std::nullopt) == standby);
  ComputerState on{ComputerPower::On, 7};
  CHECK(step_computer(on, OwnerCommand{7, ComputerPower::Off}).state == ComputerPower::Off);
  try {
    step_computer(on, OwnerCommand{8, ComputerPower::Off});
    FAIL("expected NotOwner");
  } catch (const SimError& e) {
    CHECK(e.code() == ErrorCode::NotOwner);
  }
  CHECK(power_w(ComputerPower::On) == 70);
  CHECK(power_w(ComputerPower::StandBy) == 25);
  CHECK(power_w(ComputerPower::Off) == 0);
}
