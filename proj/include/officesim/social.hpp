#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

#include <json.hpp>

#include "officesim/behavior.hpp"
#include "officesim/rng.hpp"
#include "officesim/sim_time.hpp"

namespace officesim {

// Undirected simple graph over roster positions 0..n-1.
class SocialNetwork {
 public:
  SocialNetwork() = default;
  explicit SocialNetwork(std::size_t n) : adjacency_(n) {}

  std::size_t size() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edges_; }
  const std::vector<std::size_t>& neighbors(std::size_t node) const { return adjacency_[node]; }
  bool has_edge(std::size_t a, std::size_t b) const;

  // Returns false (and does nothing) for self-loops and duplicates.
  bool add_edge(std::size_t a, std::size_t b);
  bool remove_edge(std::size_t a, std::size_t b);

  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

  int k = 0;
  double p_rewire = 0.0;

 private:
  std::vector<std::vector<std::size_t>> adjacency_;  // kept sorted
  std::size_t edges_ = 0;
};

// Watts-Strogatz: ring lattice with k neighbours per side, each lattice edge
// rewired with probability p_rewire to a uniform non-duplicate target.
// Throws InvalidParams unless n > 2k and p_rewire in [0,1].
SocialNetwork build_small_world(std::size_t n, int k, double p_rewire, std::uint64_t seed);

// Edge-list override {"n": N, "edges": [[a, b], ...]}.
SocialNetwork network_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const SocialNetwork& net);

struct ContactEvent {
  int sender;
  int recipient;
  SimTime tick;
};

inline constexpr double kWorkingMinutesPerDay = 480.0;

// Emails sent by `sender` this tick. Only users in their own office send;
// per-tick probability is contact_rate * p_email / 480, recipient uniform over
// network neighbours. `roster` maps network nodes to user ids.
std::vector<ContactEvent> emit_contacts(const UserAgent& sender, std::size_t node,
                                        double contact_rate, SimTime now,
                                        const SocialNetwork& network,
                                        std::span<const int> node_user_ids, const CounterRng& rng);

// Raises awareness by delta, capped at 100. Throws InvalidParams for delta < 0.
EnergyUser apply_contact(EnergyUser recipient, double delta);

}  // namespace officesim
