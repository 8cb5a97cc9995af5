#include "officesim/rng.hpp"

namespace officesim {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

inline Philox4x32::Counter philox_round(const Philox4x32::Counter& c, const Philox4x32::Key& k) {
  std::uint32_t hi0, lo0, hi1, lo1;
  mulhilo(kMul0, c[0], hi0, lo0);
  mulhilo(kMul1, c[2], hi1, lo1);
  return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

Philox4x32::Counter Philox4x32::generate(Counter counter, Key key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    counter = philox_round(counter, key);
  }
  return counter;
}

double CounterRng::uniform(Stream stream, std::uint32_t agent, std::uint64_t counter,
                           std::uint32_t slot) const {
  const Philox4x32::Counter ctr{
      slot, static_cast<std::uint32_t>(counter), agent,
      (static_cast<std::uint32_t>(stream) << 24) |
          static_cast<std::uint32_t>((counter >> 32) & 0x00FFFFFFu)};
  const Philox4x32::Key key{static_cast<std::uint32_t>(seed_),
                            static_cast<std::uint32_t>(seed_ >> 32)};
  const auto out = Philox4x32::generate(ctr, key);
  const std::uint64_t bits = (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

std::int64_t CounterRng::uniform_int(Stream stream, std::uint32_t agent, std::uint64_t counter,
                                     std::uint32_t slot, std::int64_t lo, std::int64_t hi) const {
  const double u = uniform(stream, agent, counter, slot);
  const auto span = static_cast<double>(hi - lo);
  auto offset = static_cast<std::int64_t>(u * span);
  if (offset >= hi - lo) offset = hi - lo - 1;
  return lo + offset;
}

double CounterRng::uniform_real(Stream stream, std::uint32_t agent, std::uint64_t counter,
                                std::uint32_t slot, double lo, double hi) const {
  return lo + (hi - lo) * uniform(stream, agent, counter, slot);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return splitmix64(splitmix64(base) ^ (index * 0xD1B54A32D192ED03ull + 1));
}

}  // namespace officesim
