#include "officesim/metering.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "officesim/error.hpp"

namespace officesim {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

PowerSample instantaneous_power(std::span<const LightState> lights,
                                std::span<const ComputerState> computers, double base_load_w) {
  PowerSample s;
  s.base_w = base_load_w;
  for (const auto& l : lights) s.lights_w += l.power();
  for (const auto& c : computers) s.computers_w += c.power();
  s.total_w = s.base_w + s.lights_w + s.computers_w;
  return s;
}

std::vector<double> MeterSeries::tick_power_w() const {
  std::vector<double> out(ticks());
  for (std::size_t t = 0; t < ticks(); ++t) out[t] = total_w(t);
  return out;
}

void MeterSeries::push(const PowerSample& s) {
  base_w.push_back(s.base_w);
  lights_w.push_back(s.lights_w);
  computers_w.push_back(s.computers_w);
}

std::vector<double> aggregate_half_hourly(std::span<const double> tick_power_w) {
  if (tick_power_w.size() % kTicksPerBin != 0) {
    throw SimError(ErrorCode::IncompleteFinalBin,
                   std::to_string(tick_power_w.size()) + " ticks is not a whole number of half hours");
  }
  std::vector<double> bins(tick_power_w.size() / kTicksPerBin, 0.0);
  for (std::size_t b = 0; b < bins.size(); ++b) {
    double watt_minutes = 0.0;
    for (std::size_t i = 0; i < kTicksPerBin; ++i) watt_minutes += tick_power_w[b * kTicksPerBin + i];
    bins[b] = watt_minutes / 60.0;
  }
  return bins;
}

std::vector<HalfHourBin> half_hourly_bins(const MeterSeries& series) {
  const auto total = aggregate_half_hourly(series.tick_power_w());
  const auto base = aggregate_half_hourly(series.base_w);
  const auto lights = aggregate_half_hourly(series.lights_w);
  const auto computers = aggregate_half_hourly(series.computers_w);
  std::vector<HalfHourBin> out(total.size());
  for (std::size_t b = 0; b < total.size(); ++b) {
    out[b] = {static_cast<std::int64_t>(b * kTicksPerBin), total[b], base[b], lights[b], computers[b]};
  }
  return out;
}

double integrated_wh(const MeterSeries& series) {
  double sum = 0.0;
  for (double wh : aggregate_half_hourly(series.tick_power_w())) sum += wh;
  return sum;
}

BetaReport compute_betas(const EventLog& log, std::int64_t horizon_ticks) {
  if (horizon_ticks <= 0 || horizon_ticks > log.horizon_ticks) {
    throw SimError(ErrorCode::MissingTimeline,
                   "log covers " + std::to_string(log.horizon_ticks) + " ticks, requested " +
                       std::to_string(horizon_ticks));
  }
  if (log.initial_light_on.size() != log.light_ids.size() ||
      log.initial_computer.size() != log.computer_ids.size()) {
    throw SimError(ErrorCode::MissingTimeline, "log lacks initial appliance states");
  }

  struct Timeline {
    double power;
    std::int64_t since = 0;
    double watt_minutes = 0.0;
  };
  std::vector<Timeline> lights(log.light_ids.size());
  std::vector<Timeline> computers(log.computer_ids.size());
  for (std::size_t i = 0; i < lights.size(); ++i) lights[i].power = log.initial_light_on[i] ? kLightOnW : 0.0;
  for (std::size_t i = 0; i < computers.size(); ++i) computers[i].power = power_w(log.initial_computer[i]);

  auto advance = [](Timeline& tl, std::int64_t tick, double power) {
    tl.watt_minutes += tl.power * static_cast<double>(tick - tl.since);
    tl.since = tick;
    tl.power = power;
  };
  for (const auto& e : log.events) {
    if (e.tick >= horizon_ticks) break;
    if (e.kind == EventKind::Light) {
      advance(lights.at(e.agent), e.tick, e.detail ? kLightOnW : 0.0);
    } else if (e.kind == EventKind::Computer) {
      advance(computers.at(e.agent), e.tick, power_w(static_cast<ComputerPower>(e.detail)));
    }
  }

  BetaReport report;
  report.horizon_hours = static_cast<double>(horizon_ticks) / 60.0;
  report.c_base_wh = log.base_load_w * static_cast<double>(horizon_ticks) / 60.0;
  auto close = [&](Timeline& tl, const std::string& id, ApplianceKind kind, double rated_w) {
    advance(tl, horizon_ticks, tl.power);
    const double c_fi = rated_w * report.horizon_hours;
    const double actual = tl.watt_minutes / 60.0;
    report.entries.push_back({id, kind, c_fi, actual, c_fi > 0 ? actual / c_fi : 0.0});
  };
  for (std::size_t i = 0; i < lights.size(); ++i) close(lights[i], log.light_ids[i], ApplianceKind::Light, kLightOnW);
  for (std::size_t i = 0; i < computers.size(); ++i) {
    close(computers[i], log.computer_ids[i], ApplianceKind::Computer, kComputerOnW);
  }
  return report;
}

double reconstruct_total(const BetaReport& report) {
  double flexible = 0.0;
  for (const auto& e : report.entries) flexible += e.beta * e.c_fi_wh;
  return report.c_base_wh + flexible;
}

void check_reconstruction(const BetaReport& report, double meter_total_wh, double rel_tol) {
  const double rebuilt = reconstruct_total(report);
  const double scale = std::max(std::abs(meter_total_wh), 1e-300);
  if (std::abs(rebuilt - meter_total_wh) > rel_tol * scale &&
      !(rebuilt == 0.0 && meter_total_wh == 0.0)) {
    throw SimError(ErrorCode::ReconstructionMismatch,
                   "reconstructed " + num(rebuilt) + " Wh vs metered " + num(meter_total_wh) + " Wh");
  }
}

bool TimeWindow::contains(SimTime t) const {
  const auto day = static_cast<std::size_t>(t.day_of_week());
  const int minute = t.minute_of_day();
  for (const auto& s : spans_) {
    if (s.days[day] && minute >= s.start_minute && minute < s.end_minute) return true;
  }
  return false;
}

namespace {
constexpr std::array<bool, 7> kWeekdays{true, true, true, true, true, false, false};
constexpr std::array<bool, 7> kWeekend{false, false, false, false, false, true, true};
constexpr int kDayStart = 8 * 60;
constexpr int kDayEnd = 18 * 60;
}  // namespace

TimeWindow TimeWindow::weekday_daytime() {
  return TimeWindow("weekday_daytime", {{kWeekdays, kDayStart, kDayEnd}});
}

TimeWindow TimeWindow::weekend_daytime() {
  return TimeWindow("weekend_daytime", {{kWeekend, kDayStart, kDayEnd}});
}

TimeWindow TimeWindow::nights_and_weekends() {
  return TimeWindow("nights_and_weekends",
                    {{kWeekdays, 0, kDayStart}, {kWeekdays, kDayEnd, 1440}, {kWeekend, 0, 1440}});
}

TimeWindow TimeWindow::everything() {
  return TimeWindow("all", {{{true, true, true, true, true, true, true}, 0, 1440}});
}

Shares decompose_shares(const MeterSeries& series, const TimeWindow& window) {
  Shares s;
  std::size_t covered = 0;
  for (std::size_t t = 0; t < series.ticks(); ++t) {
    if (!window.contains(SimTime(static_cast<std::int64_t>(t)))) continue;
    ++covered;
    s.base_wh += series.base_w[t] / 60.0;
    s.lights_wh += series.lights_w[t] / 60.0;
    s.computers_wh += series.computers_w[t] / 60.0;
  }
  s.total_wh = s.base_wh + s.lights_wh + s.computers_wh;
  if (covered == 0 || s.total_wh <= 0.0) {
    throw SimError(ErrorCode::EmptyWindow, "window '" + window.name() + "' holds no energy");
  }
  s.base_pct = 100.0 * s.base_wh / s.total_wh;
  s.lights_pct = 100.0 * s.lights_wh / s.total_wh;
  s.computers_pct = 100.0 * s.computers_wh / s.total_wh;
  return s;
}

double mean_power_w(const MeterSeries& series, const TimeWindow& window) {
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t t = 0; t < series.ticks(); ++t) {
    if (!window.contains(SimTime(static_cast<std::int64_t>(t)))) continue;
    sum += series.total_w(t);
    ++n;
  }
  if (n == 0) throw SimError(ErrorCode::EmptyWindow, "window '" + window.name() + "' covers no tick");
  return sum / static_cast<double>(n);
}

void write_meter_csv(std::ostream& out, const MeterSeries& series) {
  out << "timestamp_min,total_w,base_w,lights_w,computers_w\n";
  for (std::size_t t = 0; t < series.ticks(); ++t) {
    out << t << ',' << num(series.total_w(t)) << ',' << num(series.base_w[t]) << ','
        << num(series.lights_w[t]) << ',' << num(series.computers_w[t]) << '\n';
  }
}

void write_half_hourly_csv(std::ostream& out, const MeterSeries& series) {
  out << "bin_start_min,wh_total,wh_base,wh_lights,wh_computers\n";
  for (const auto& b : half_hourly_bins(series)) {
    out << b.start_min << ',' << num(b.wh_total) << ',' << num(b.wh_base) << ','
        << num(b.wh_lights) << ',' << num(b.wh_computers) << '\n';
  }
}

void write_beta_csv(std::ostream& out, const BetaReport& report) {
  out << "appliance_id,kind,c_fi_wh,actual_wh,beta\n";
  for (const auto& e : report.entries) {
    out << e.appliance_id << ',' << (e.kind == ApplianceKind::Light ? "light" : "computer") << ','
        << num(e.c_fi_wh) << ',' << num(e.actual_wh) << ',' << num(e.beta) << '\n';
  }
}

}  // namespace officesim
