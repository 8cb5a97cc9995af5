#include "officesim/population.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "officesim/error.hpp"
#include "officesim/rng.hpp"

namespace officesim {

namespace {

constexpr int hm(int h, int m = 0) { return h * 60 + m; }

constexpr std::array<WorkStereotype, 3> kWork{{
    {WorkKind::EarlyBird, hm(5), hm(9), hm(17), hm(18), false},
    {WorkKind::TimetableComplier, hm(9), hm(10), hm(17), hm(18), false},
    {WorkKind::FlexibleWorker, hm(10), hm(13), 0, hm(23), true},
}};

constexpr std::array<AwarenessStereotype, 4> kAwareness{{
    {AwarenessKind::EnvironmentChampion, 95, 100, 0.95, 0.9},
    {AwarenessKind::EnergySaver, 70, 94, 0.7, 0.6},
    {AwarenessKind::RegularUser, 30, 69, 0.4, 0.2},
    {AwarenessKind::BigUser, 0, 29, 0.2, 0.05},
}};

[[noreturn]] void invalid(const std::string& what) {
  throw SimError(ErrorCode::InvalidPopulationSpec, what);
}

template <std::size_t N>
void check_mix(const std::array<double, N>& mix, const char* name) {
  double sum = 0.0;
  for (double f : mix) {
    if (!(f >= 0.0 && f <= 1.0)) invalid(std::string(name) + ": fraction outside [0,1]");
    sum += f;
  }
  if (std::abs(sum - 1.0) > 1e-9) invalid(std::string(name) + ": fractions must sum to 1");
}

// Purposes within the Population stream.
enum : std::uint32_t { kShuffleWork = 0, kShuffleAwareness = 1, kAwarenessDraw = 2 };

}  // namespace

const WorkStereotype& work_stereotype(WorkKind kind) { return kWork[static_cast<int>(kind)]; }

std::string_view to_string(WorkKind kind) {
  switch (kind) {
    case WorkKind::EarlyBird: return "EarlyBird";
    case WorkKind::TimetableComplier: return "TimetableComplier";
    case WorkKind::FlexibleWorker: return "FlexibleWorker";
  }
  return "?";
}

const AwarenessStereotype& awareness_stereotype(AwarenessKind kind) {
  return kAwareness[static_cast<int>(kind)];
}

std::span<const AwarenessStereotype, 4> awareness_table() { return kAwareness; }

std::string_view to_string(AwarenessKind kind) {
  switch (kind) {
    case AwarenessKind::EnvironmentChampion: return "EnvironmentChampion";
    case AwarenessKind::EnergySaver: return "EnergySaver";
    case AwarenessKind::RegularUser: return "RegularUser";
    case AwarenessKind::BigUser: return "BigUser";
  }
  return "?";
}

void PopulationSpec::validate() const {
  check_mix(work_mix, "work_mix");
  check_mix(awareness_mix, "awareness_mix");
  if (!(p_weekend >= 0.0 && p_weekend <= 1.0)) invalid("p_weekend outside [0,1]");
}

PopulationSpec population_spec_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) invalid("population: expected an object");
  PopulationSpec spec;
  try {
    if (doc.contains("n_users")) spec.n_users = doc.at("n_users").get<std::size_t>();
    if (doc.contains("work_mix")) spec.work_mix = doc.at("work_mix").get<std::array<double, 3>>();
    if (doc.contains("awareness_mix")) {
      spec.awareness_mix = doc.at("awareness_mix").get<std::array<double, 4>>();
    }
    if (doc.contains("p_weekend")) spec.p_weekend = doc.at("p_weekend").get<double>();
  } catch (const nlohmann::json::exception& e) {
    invalid(std::string("population: ") + e.what());
  }
  spec.validate();
  return spec;
}

nlohmann::json to_json(const PopulationSpec& spec) {
  return {{"n_users", spec.n_users},
          {"work_mix", spec.work_mix},
          {"awareness_mix", spec.awareness_mix},
          {"p_weekend", spec.p_weekend}};
}

std::vector<int> Roster::ids() const {
  std::vector<int> out;
  out.reserve(users.size());
  for (const auto& u : users) out.push_back(u.id);
  return out;
}

std::vector<std::size_t> apportion(std::span<const double> fractions, std::size_t n) {
  std::vector<std::size_t> counts(fractions.size());
  std::vector<double> remainder(fractions.size());
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    const double quota = fractions[i] * static_cast<double>(n);
    counts[i] = static_cast<std::size_t>(std::floor(quota));
    remainder[i] = quota - std::floor(quota);
    assigned += counts[i];
  }
  std::vector<std::size_t> order(fractions.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t k = 0; assigned < n && !order.empty(); k = (k + 1) % order.size()) {
    ++counts[order[k]];
    ++assigned;
  }
  return counts;
}

Roster generate_population(const PopulationSpec& spec, std::uint64_t seed) {
  spec.validate();
  const CounterRng rng(seed);
  const std::size_t n = spec.n_users;

  auto expand = [n](std::span<const double> mix) {
    std::vector<int> kinds;
    kinds.reserve(n);
    const auto counts = apportion(mix, n);
    for (std::size_t k = 0; k < counts.size(); ++k) kinds.insert(kinds.end(), counts[k], static_cast<int>(k));
    return kinds;
  };
  auto shuffle = [&](std::vector<int>& items, std::uint32_t purpose) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(
          rng.uniform_int(Stream::Population, purpose, i, 0, 0, static_cast<std::int64_t>(i)));
      std::swap(items[i - 1], items[j]);
    }
  };

  auto work = expand(spec.work_mix);
  auto awareness = expand(spec.awareness_mix);
  shuffle(work, kShuffleWork);
  shuffle(awareness, kShuffleAwareness);

  Roster roster;
  roster.p_weekend = spec.p_weekend;
  roster.users.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    EnergyUser user;
    user.id = static_cast<int>(i);
    user.work = static_cast<WorkKind>(work[i]);
    user.awareness_kind = static_cast<AwarenessKind>(awareness[i]);
    const auto& band = awareness_stereotype(user.awareness_kind);
    const double u = rng.uniform(Stream::Population, kAwarenessDraw, i, 0);
    user.awareness = band.awareness_lo + u * (band.awareness_hi - band.awareness_lo);
    roster.users.push_back(user);
  }
  return roster;
}

}  // namespace officesim
