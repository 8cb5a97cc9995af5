#pragma once

#include <array>
#include <cstdint>

namespace officesim {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter generate(Counter counter, Key key);
};

// Independent random streams. Every draw is addressed by
// (seed, stream, agent, counter, slot), so the value of one draw never depends
// on how many other draws were made. This gives common random numbers across
// scenario arms and keeps per-agent trajectories stable when other agents are
// added or removed.
enum class Stream : std::uint32_t {
  Population = 1,
  Assignment = 2,
  Network = 3,
  Schedule = 4,
  User = 5,
  Room = 6,
  Contact = 7,
};

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  // Uniform double in [0, 1) with 53 bits of resolution.
  double uniform(Stream stream, std::uint32_t agent, std::uint64_t counter,
                 std::uint32_t slot) const;

  // Uniform integer in [lo, hi). Requires lo < hi.
  std::int64_t uniform_int(Stream stream, std::uint32_t agent, std::uint64_t counter,
                           std::uint32_t slot, std::int64_t lo, std::int64_t hi) const;

  // Uniform real in [lo, hi).
  double uniform_real(Stream stream, std::uint32_t agent, std::uint64_t counter,
                      std::uint32_t slot, double lo, double hi) const;

 private:
  std::uint64_t seed_;
};

// Seed for replication `index` of a replication set rooted at `base`.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace officesim
