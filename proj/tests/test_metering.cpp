#include <doctest.h>

#include <sstream>

#include "officesim/error.hpp"
#include "officesim/metering.hpp"

using namespace officesim;

namespace {

EventLog single_appliance_log(std::int64_t horizon, bool light, ComputerPower computer) {
  EventLog log;
  log.horizon_ticks = horizon;
  log.light_ids = {"L"};
  log.computer_ids = {"P"};
  log.room_ids = {"R"};
  log.light_room = {0};
  log.initial_light_on = {light};
  log.initial_computer = {computer};
  return log;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const SimError& e) {
    return e.code();
  }
  return ErrorCode::InconsistentState;
}

}  // namespace

TEST_CASE("instantaneous power") {
  std::vector<LightState> lights(3);
  std::vector<ComputerState> pcs(3);
  auto p = instantaneous_power(lights, pcs, 500);
  CHECK(p.total_w == 500);
  CHECK(p.base_w == 500);
  CHECK(p.lights_w == 0);
  CHECK(p.computers_w == 0);

  lights[1].on = true;
  CHECK(instantaneous_power(lights, std::span<const ComputerState>{}, 0).total_w == 60);

  pcs = {{ComputerPower::On, 1}, {ComputerPower::On, 2}, {ComputerPower::StandBy, 3}};
  p = instantaneous_power(std::span<const LightState>{}, pcs, 0);
  CHECK(p.total_w == 165);
  CHECK(p.computers_w == 165);
}

TEST_CASE("half-hourly aggregation") {
  CHECK(aggregate_half_hourly(std::vector<double>(30, 60.0)) == std::vector<double>{30.0});
  CHECK(aggregate_half_hourly(std::vector<double>(30, 0.0)) == std::vector<double>{0.0});
  std::vector<double> step(30, 0.0);
  std::fill(step.begin(), step.begin() + 15, 120.0);
  CHECK(aggregate_half_hourly(step) == std::vector<double>{30.0});
  CHECK(aggregate_half_hourly(std::vector<double>(90, 60.0)).size() == 3);
  CHECK(code_of([] { aggregate_half_hourly(std::vector<double>(31, 1.0)); }) == ErrorCode::IncompleteFinalBin);
}

TEST_CASE("betas of constant timelines") {
  auto log = single_appliance_log(600, true, ComputerPower::Off);
  auto r = compute_betas(log, 600);
  REQUIRE(r.entries.size() == 2);
  CHECK(r.entries[0].beta == 1.0);
  CHECK(r.entries[1].beta == 0.0);

  log = single_appliance_log(600, false, ComputerPower::StandBy);
  r = compute_betas(log, 600);
  double wh = 0;  // integrate minute by minute
  for (int t = 0; t < 600; ++t) wh += 25.0 / 60.0;
  CHECK(r.entries[1].actual_wh == doctest::Approx(wh).epsilon(1e-12));
  CHECK(r.entries[1].beta == doctest::Approx(wh / (70.0 * 10.0)).epsilon(1e-12));
  CHECK(r.entries[1].beta == doctest::Approx(25.0 / 70.0));
}

TEST_CASE("betas follow a switching timeline") {
  auto log = single_appliance_log(120, false, ComputerPower::Off);
  log.base_load_w = 100;
  log.record(10, AgentKind::Light, 0, EventKind::Light, 1);
  log.record(40, AgentKind::Light, 0, EventKind::Light, 0);
  log.record(30, AgentKind::Computer, 0, EventKind::Computer, static_cast<int>(ComputerPower::On));
  log.record(90, AgentKind::Computer, 0, EventKind::Computer, static_cast<int>(ComputerPower::StandBy));
  std::stable_sort(log.events.begin(), log.events.end(),
                   [](const LogEvent& a, const LogEvent& b) { return a.tick < b.tick; });
  const auto r = compute_betas(log, 120);
  CHECK(r.entries[0].actual_wh == doctest::Approx(30.0));  // 30 min at 60 W
  CHECK(r.entries[1].actual_wh == doctest::Approx(60 * 70 / 60.0 + 30 * 25 / 60.0));
  CHECK(r.c_base_wh == doctest::Approx(200.0));
  CHECK(code_of([&] { compute_betas(log, 121); }) == ErrorCode::MissingTimeline);
}

TEST_CASE("reconstruction identity") {
  BetaReport r;
  r.c_base_wh = 100;
  r.entries = {{"a", ApplianceKind::Light, 60, 30, 0.5}, {"b", ApplianceKind::Light, 60, 0, 0.0}};
  CHECK(reconstruct_total(r) == 130.0);
  CHECK_NOTHROW(check_reconstruction(r, 130.0));
  CHECK(code_of([&] { check_reconstruction(r, 131.0); }) == ErrorCode::ReconstructionMismatch);
}

TEST_CASE("time windows") {
  const auto day = TimeWindow::weekday_daytime();
  CHECK(day.contains(SimTime::at(0, 8)));
  CHECK_FALSE(day.contains(SimTime::at(0, 18)));
  CHECK(day.contains(SimTime::at(4, 17, 59)));
  CHECK_FALSE(day.contains(SimTime::at(5, 12)));
  const auto night = TimeWindow::nights_and_weekends();
  const auto weekend = TimeWindow::weekend_daytime();
  std::size_t n_day = 0, n_night = 0, n_weekend = 0;
  for (std::int64_t t = 0; t < kMinutesPerWeek; ++t) {
    const SimTime s(t);
    CHECK(day.contains(s) != night.contains(s));
    n_day += day.contains(s);
    n_night += night.contains(s);
    n_weekend += weekend.contains(s);
  }
  CHECK(n_day == 5 * 600);
  CHECK(n_night == kMinutesPerWeek - 5 * 600);
  CHECK(n_weekend == 2 * 600);
}

TEST_CASE("share decomposition") {
  MeterSeries m;
  for (int t = 0; t < 60; ++t) m.push({100, 50, 30, 20});
  const auto s = decompose_shares(m, TimeWindow::everything());
  CHECK(s.base_pct == doctest::Approx(50));
  CHECK(s.lights_pct == doctest::Approx(30));
  CHECK(s.computers_pct == doctest::Approx(20));
  CHECK(s.total_wh == doctest::Approx(100));
  CHECK(mean_power_w(m, TimeWindow::everything()) == doctest::Approx(100));
  // the first hour of Monday holds no weekday daytime
  CHECK(code_of([&] { decompose_shares(m, TimeWindow::weekday_daytime()); }) == ErrorCode::EmptyWindow);
  MeterSeries zero;
  for (int t = 0; t < 30; ++t) zero.push({0, 0, 0, 0});
  CHECK(code_of([&] { decompose_shares(zero, TimeWindow::everything()); }) == ErrorCode::EmptyWindow);
}

TEST_CASE("csv writers") {
  MeterSeries m;
  for (int t = 0; t < 30; ++t) m.push({90, 30, 60, 0});
  std::ostringstream meter, half;
  write_meter_csv(meter, m);
  write_half_hourly_csv(half, m);
  CHECK(meter.str().rfind("timestamp_min,total_w,base_w,lights_w,computers_w\n0,90,30,60,0\n", 0) == 0);
  CHECK(half.str() == "bin_start_min,wh_total,wh_base,wh_lights,wh_computers\n0,45,15,30,0\n");
  CHECK(integrated_wh(m) == doctest::Approx(45));
}
