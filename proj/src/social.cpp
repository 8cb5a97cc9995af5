#include "officesim/social.hpp"

#include <algorithm>
#include <string>

#include "officesim/error.hpp"

namespace officesim {

namespace {

enum ContactDraw : std::uint32_t { kDrawEmit = 0, kDrawRecipient = 1 };

}  // namespace

bool SocialNetwork::has_edge(std::size_t a, std::size_t b) const {
  const auto& adj = adjacency_[a];
  return std::binary_search(adj.begin(), adj.end(), b);
}

bool SocialNetwork::add_edge(std::size_t a, std::size_t b) {
  if (a == b || a >= size() || b >= size() || has_edge(a, b)) return false;
  auto insert = [](std::vector<std::size_t>& v, std::size_t x) {
    v.insert(std::lower_bound(v.begin(), v.end(), x), x);
  };
  insert(adjacency_[a], b);
  insert(adjacency_[b], a);
  ++edges_;
  return true;
}

bool SocialNetwork::remove_edge(std::size_t a, std::size_t b) {
  if (a >= size() || b >= size() || !has_edge(a, b)) return false;
  auto erase = [](std::vector<std::size_t>& v, std::size_t x) {
    v.erase(std::lower_bound(v.begin(), v.end(), x));
  };
  erase(adjacency_[a], b);
  erase(adjacency_[b], a);
  --edges_;
  return true;
}

std::vector<std::pair<std::size_t, std::size_t>> SocialNetwork::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(edges_);
  for (std::size_t a = 0; a < size(); ++a) {
    for (auto b : adjacency_[a]) {
      if (a < b) out.emplace_back(a, b);
    }
  }
  return out;
}

SocialNetwork build_small_world(std::size_t n, int k, double p_rewire, std::uint64_t seed) {
  if (k < 0 || n <= 2 * static_cast<std::size_t>(k)) {
    throw SimError(ErrorCode::InvalidParams, "small world needs n > 2k (n=" + std::to_string(n) +
                                                 ", k=" + std::to_string(k) + ")");
  }
  if (!(p_rewire >= 0.0 && p_rewire <= 1.0)) {
    throw SimError(ErrorCode::InvalidParams, "p_rewire outside [0,1]");
  }
  SocialNetwork net(n);
  net.k = k;
  net.p_rewire = p_rewire;
  for (std::size_t i = 0; i < n; ++i) {
    for (int j = 1; j <= k; ++j) net.add_edge(i, (i + static_cast<std::size_t>(j)) % n);
  }

  const CounterRng rng(seed);
  for (int j = 1; j <= k; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t old_target = (i + static_cast<std::size_t>(j)) % n;
      const auto counter = static_cast<std::uint64_t>(j) * n + i;
      if (rng.uniform(Stream::Network, 0, counter, 0) >= p_rewire) continue;
      // the lattice edge may already have been rewired away from the other end
      if (!net.has_edge(i, old_target)) continue;
      std::vector<std::size_t> candidates;
      candidates.reserve(n);
      for (std::size_t c = 0; c < n; ++c) {
        if (c != i && !net.has_edge(i, c)) candidates.push_back(c);
      }
      if (candidates.empty()) continue;
      const auto pick = rng.uniform_int(Stream::Network, 0, counter, 1, 0,
                                        static_cast<std::int64_t>(candidates.size()));
      net.remove_edge(i, old_target);
      net.add_edge(i, candidates[static_cast<std::size_t>(pick)]);
    }
  }
  return net;
}

SocialNetwork network_from_json(const nlohmann::json& doc) {
  auto bad = [](const std::string& what) { throw SimError(ErrorCode::MalformedDocument, what); };
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("edges")) {
    bad("network: expected {\"n\": N, \"edges\": [[a,b],...]}");
  }
  if (!doc["n"].is_number_unsigned() && !doc["n"].is_number_integer()) bad("network.n: expected an integer");
  const auto n = doc["n"].get<long long>();
  if (n < 0) bad("network.n: must be >= 0");
  SocialNetwork net(static_cast<std::size_t>(n));
  const auto& edges = doc["edges"];
  if (!edges.is_array()) bad("network.edges: expected an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    const std::string where = "network.edges[" + std::to_string(i) + "]";
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
      bad(where + ": expected [a, b]");
    }
    const auto a = e[0].get<long long>();
    const auto b = e[1].get<long long>();
    if (a < 0 || b < 0 || a >= n || b >= n) bad(where + ": node out of range");
    if (a == b) bad(where + ": self-loop");
    if (!net.add_edge(static_cast<std::size_t>(a), static_cast<std::size_t>(b))) {
      throw SimError(ErrorCode::DuplicateId, where + ": duplicate edge");
    }
  }
  return net;
}

nlohmann::json to_json(const SocialNetwork& net) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [a, b] : net.edges()) edges.push_back({a, b});
  return {{"n", net.size()}, {"edges", std::move(edges)}};
}

std::vector<ContactEvent> emit_contacts(const UserAgent& sender, std::size_t node,
                                        double contact_rate, SimTime now,
                                        const SocialNetwork& network,
                                        std::span<const int> node_user_ids, const CounterRng& rng) {
  std::vector<ContactEvent> out;
  if (contact_rate <= 0.0 || !std::holds_alternative<InOwnOffice>(sender.state)) return out;
  if (node >= network.size()) return out;
  const auto& neighbors = network.neighbors(node);
  if (neighbors.empty()) return out;

  const auto agent = static_cast<std::uint32_t>(sender.profile.id);
  const auto counter = static_cast<std::uint64_t>(now.minute_of_sim());
  const double p_email = awareness_to_probabilities(sender.profile.awareness).p_email;
  const double p = contact_rate * p_email / kWorkingMinutesPerDay;
  if (rng.uniform(Stream::Contact, agent, counter, kDrawEmit) >= p) return out;
  const auto pick = rng.uniform_int(Stream::Contact, agent, counter, kDrawRecipient, 0,
                                    static_cast<std::int64_t>(neighbors.size()));
  out.push_back({sender.profile.id, node_user_ids[neighbors[static_cast<std::size_t>(pick)]], now});
  return out;
}

EnergyUser apply_contact(EnergyUser recipient, double delta) {
  if (!(delta >= 0.0)) throw SimError(ErrorCode::InvalidParams, "awareness delta must be >= 0");
  recipient.awareness = std::min(100.0, recipient.awareness + delta);
  return recipient;
}

}  // namespace officesim
