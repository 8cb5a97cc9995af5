#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace officesim {

enum class WorkKind { EarlyBird, TimetableComplier, FlexibleWorker };

// Arrival and leave windows as half-open [lo, hi) minute-of-day ranges.
// For flexible workers the leave window starts at the sampled arrival.
struct WorkStereotype {
  WorkKind kind;
  int arrival_lo;
  int arrival_hi;
  int leave_lo;
  int leave_hi;
  bool leave_from_arrival;
};

const WorkStereotype& work_stereotype(WorkKind kind);
std::string_view to_string(WorkKind kind);

enum class AwarenessKind { EnvironmentChampion, EnergySaver, RegularUser, BigUser };

struct AwarenessStereotype {
  AwarenessKind kind;
  // Integer band from the stereotype table; generated awareness is uniform
  // on the real interval [lo, hi).
  int awareness_lo;
  int awareness_hi;
  double p_switch_off;
  double p_email;
};

const AwarenessStereotype& awareness_stereotype(AwarenessKind kind);
std::span<const AwarenessStereotype, 4> awareness_table();
std::string_view to_string(AwarenessKind kind);

struct PopulationSpec {
  std::size_t n_users = 213;
  // EarlyBird, TimetableComplier, FlexibleWorker.
  std::array<double, 3> work_mix{0.08, 0.53, 0.39};
  // EnvironmentChampion, EnergySaver, RegularUser, BigUser.
  std::array<double, 4> awareness_mix{0.01, 0.08, 0.31, 0.60};
  double p_weekend = 0.02;

  // Throws SimError(InvalidPopulationSpec).
  void validate() const;
};

PopulationSpec population_spec_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const PopulationSpec& spec);

struct EnergyUser {
  int id = 0;
  WorkKind work = WorkKind::TimetableComplier;
  AwarenessKind awareness_kind = AwarenessKind::BigUser;
  // energy-saving awareness in [0, 100]
  double awareness = 0.0;

  bool operator==(const EnergyUser&) const = default;
};

struct Roster {
  std::vector<EnergyUser> users;
  double p_weekend = 0.02;

  std::vector<int> ids() const;
};

// Largest-remainder (Hamilton) apportionment of n over the given fractions.
// Ties in the remainder go to the earlier category.
std::vector<std::size_t> apportion(std::span<const double> fractions, std::size_t n);

// Exact stereotype counts by apportionment, stereotypes assigned to users
// independently by seeded shuffles, awareness uniform within each band.
Roster generate_population(const PopulationSpec& spec, std::uint64_t seed);

}  // namespace officesim
