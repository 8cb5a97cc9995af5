#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "officesim/behavior.hpp"
#include "officesim/event_log.hpp"
#include "officesim/sim_time.hpp"

namespace officesim {

struct PowerSample {
  double total_w = 0.0;
  double base_w = 0.0;
  double lights_w = 0.0;
  double computers_w = 0.0;
};

// Lights = 60 W per light on; computers = 70 W on, 25 W standby; base constant.
PowerSample instantaneous_power(std::span<const LightState> lights,
                                std::span<const ComputerState> computers, double base_load_w);

// Per-minute power by category. Tick t covers [t, t+1) minutes of the horizon.
struct MeterSeries {
  std::vector<double> base_w;
  std::vector<double> lights_w;
  std::vector<double> computers_w;

  std::size_t ticks() const { return base_w.size(); }
  double total_w(std::size_t t) const { return base_w[t] + lights_w[t] + computers_w[t]; }
  std::vector<double> tick_power_w() const;
  void push(const PowerSample& s);

  bool operator==(const MeterSeries&) const = default;
};

inline constexpr std::size_t kTicksPerBin = 30;

// Energy per 30-minute bin in Wh. Throws IncompleteFinalBin unless the
// length is a multiple of 30.
std::vector<double> aggregate_half_hourly(std::span<const double> tick_power_w);

struct HalfHourBin {
  std::int64_t start_min = 0;
  double wh_total = 0.0;
  double wh_base = 0.0;
  double wh_lights = 0.0;
  double wh_computers = 0.0;
};

std::vector<HalfHourBin> half_hourly_bins(const MeterSeries& series);

// Sum of half-hourly energy, the meter's integrated total.
double integrated_wh(const MeterSeries& series);

enum class ApplianceKind { Light, Computer };

struct BetaEntry {
  std::string appliance_id;
  ApplianceKind kind;
  double c_fi_wh;    // rated maximum power over the horizon
  double actual_wh;  // integrated from the state timeline
  double beta;
};

struct BetaReport {
  double horizon_hours = 0.0;
  double c_base_wh = 0.0;
  std::vector<BetaEntry> entries;
};

// Utilisation factor of every light and computer over the first
// `horizon_ticks` of the log. Computers are rated at their on power, so
// standby time gives a fractional beta. Throws MissingTimeline when the log
// does not cover the horizon.
BetaReport compute_betas(const EventLog& log, std::int64_t horizon_ticks);

// C_total = C_base + sum(beta_i * C_fi).
double reconstruct_total(const BetaReport& report);

// Throws ReconstructionMismatch when the reconstructed total departs from the
// meter total by more than rel_tol.
void check_reconstruction(const BetaReport& report, double meter_total_wh, double rel_tol = 1e-9);

// Set of (weekday, minute-of-day) ranges. Ranges are half-open [start, end).
class TimeWindow {
 public:
  struct Span {
    std::array<bool, 7> days{};
    int start_minute = 0;
    int end_minute = 1440;
  };

  TimeWindow(std::string name, std::vector<Span> spans) : name_(std::move(name)), spans_(std::move(spans)) {}

  const std::string& name() const { return name_; }
  bool contains(SimTime t) const;

  // Mon-Fri 08:00-18:00.
  static TimeWindow weekday_daytime();
  // Saturday and Sunday 08:00-18:00.
  static TimeWindow weekend_daytime();
  // Complement of weekday daytime: weekday evenings, nights and whole weekends.
  static TimeWindow nights_and_weekends();
  static TimeWindow everything();

 private:
  std::string name_;
  std::vector<Span> spans_;
};

struct Shares {
  double base_pct = 0.0;
  double lights_pct = 0.0;
  double computers_pct = 0.0;
  double total_wh = 0.0;
  double base_wh = 0.0;
  double lights_wh = 0.0;
  double computers_wh = 0.0;
};

// Category shares of energy in the window. Throws EmptyWindow when the window
// covers no tick or no energy.
Shares decompose_shares(const MeterSeries& series, const TimeWindow& window);

// Mean total power over the ticks inside the window; EmptyWindow if none.
double mean_power_w(const MeterSeries& series, const TimeWindow& window);

void write_meter_csv(std::ostream& out, const MeterSeries& series);
void write_half_hourly_csv(std::ostream& out, const MeterSeries& series);
void write_beta_csv(std::ostream& out, const BetaReport& report);

}  // namespace officesim
