#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "officesim/engine.hpp"
#include "officesim/metering.hpp"

namespace officesim {

enum class ExperimentName { BaselineAutomated, StaffVsAutomated, ContactSweep, CategoryBreakdown };

std::string_view to_string(ExperimentName name);
std::optional<ExperimentName> experiment_from_string(std::string_view text);

struct ShareTargets {
  double night_base_pct = 92.0;
  double day_computers_pct = 7.0;
  double day_lights_pct = 55.0;
};

struct ExperimentSpec {
  ExperimentName name = ExperimentName::BaselineAutomated;
  Scenario scenario;
  ModelInputs inputs{default_building_plan(), PopulationSpec{}};
  std::size_t n_reps = 20;
  std::uint64_t seed_base = 1;
  // contact-rate levels (emails/user/day) for the sweep
  std::vector<double> levels{0.0, 1.0, 4.0, 16.0};
  ShareTargets targets;
  double calibration_max_w = 100000.0;
  std::filesystem::path out_dir;
  unsigned threads = 0;

  // Throws InvalidScenario.
  void validate() const;
};

// Config keys: scenario, population, plan (path, relative to base_dir),
// network {k, p_rewire}, reps, seed_base, levels, targets, threads.
// Experiment-specific scenario defaults are applied before the overrides.
ExperimentSpec experiment_spec_from_json(ExperimentName name, const nlohmann::json& config,
                                         const std::filesystem::path& base_dir = {});

struct ExperimentResult {
  nlohmann::json summary;
  std::vector<std::filesystem::path> files;
};

// Runs the experiment, writes its CSVs and summary.json into spec.out_dir
// (when set) and returns the summary.
ExperimentResult run_experiment(const ExperimentSpec& spec);

// ---- statistics ------------------------------------------------------------

struct SeriesSummary {
  double total_wh = 0.0;
  Shares shares;
  double peak_w = 0.0;
  std::int64_t peak_tick = 0;
};

SeriesSummary summarize_series(const MeterSeries& series);

// Per-series totals, shares, peak power and time; cross-series mean/stdev.
nlohmann::json summarize(std::span<const MeterSeries> series);

double mean(std::span<const double> xs);
// Sample standard deviation; 0 for fewer than two values.
double stdev(std::span<const double> xs);

// Two-sided exact sign test: probability under Binomial(n, 1/2) of a split at
// least as extreme as `positives` out of `n` non-tied pairs.
double sign_test_p_value(std::size_t positives, std::size_t n);

// Mean power per half hour (W) averaged over the given series.
std::vector<double> mean_half_hour_power(std::span<const MeterSeries> series);

struct PeakRun {
  std::size_t first_bin;
  std::size_t last_bin;
  std::size_t max_bin;
  Weekday day;
};

// Contiguous runs of half hours whose power exceeds the midpoint between the
// profile's minimum and maximum.
std::vector<PeakRun> detect_peaks(std::span<const double> half_hour_power_w);

// True when the profile has exactly one peak on each of Monday..Friday.
bool has_five_weekday_peaks(std::span<const double> half_hour_power_w);

struct WindowEnergy {
  double hours = 0.0;  // ticks in the window / 60
  double lights_wh = 0.0;
  double computers_wh = 0.0;
};

WindowEnergy window_energy(const MeterSeries& series, const TimeWindow& window);

struct CalibrationPoint {
  double base_load_w;
  double objective;  // sum of squared share errors, pp^2
  double night_base_pct;
  double day_lights_pct;
  double day_computers_pct;
};

// Share of each category if the base load were `base_load_w`.
CalibrationPoint evaluate_base_load(double base_load_w, const WindowEnergy& night,
                                    const WindowEnergy& day, const ShareTargets& targets);

// Minimises the share error over base_load_w in [0, max_w] (1 W grid).
CalibrationPoint calibrate_base_load(const WindowEnergy& night, const WindowEnergy& day,
                                     const ShareTargets& targets, double max_w);

// Runs fn(i) for i in [0, n) on up to `threads` workers; rethrows the first
// failure. fn must only write to state owned by index i.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace officesim
