#include <doctest.h>

#include <set>

#include "officesim/rng.hpp"
#include "officesim/sim_time.hpp"

using namespace officesim;

TEST_CASE("philox4x32-10 known-answer vectors") {
  using C = Philox4x32::Counter;
  CHECK(Philox4x32::generate(C{0, 0, 0, 0}, {0, 0}) == C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(Philox4x32::generate(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(Philox4x32::generate(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("counter rng draws are addressable and independent of call order") {
  const CounterRng rng(42);
  const double a = rng.uniform(Stream::User, 7, 1000, 2);
  for (int i = 0; i < 100; ++i) rng.uniform(Stream::User, 8, i, 0);
  CHECK(rng.uniform(Stream::User, 7, 1000, 2) == a);
  CHECK(rng.uniform(Stream::User, 7, 1000, 3) != a);
  CHECK(rng.uniform(Stream::Schedule, 7, 1000, 2) != a);
  CHECK(CounterRng(43).uniform(Stream::User, 7, 1000, 2) != a);
}

TEST_CASE("uniform draws stay in range and look uniform") {
  const CounterRng rng(5);
  double sum = 0.0;
  std::set<std::int64_t> seen;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform(Stream::Population, 0, static_cast<std::uint64_t>(i), 0);
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
    const auto k = rng.uniform_int(Stream::Population, 1, static_cast<std::uint64_t>(i), 0, -3, 4);
    REQUIRE(k >= -3);
    REQUIRE(k < 4);
    seen.insert(k);
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.02));
  CHECK(seen.size() == 7);
}

TEST_CASE("derive_seed spreads replication indices") {
  std::set<std::uint64_t> seeds;
  for (std::uint64_t i = 0; i < 1000; ++i) seeds.insert(derive_seed(1, i));
  CHECK(seeds.size() == 1000);
  CHECK(derive_seed(1, 0) == derive_seed(1, 0));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
}

TEST_CASE("sim time calendar") {
  CHECK(SimTime(0).day_of_week() == Weekday::Monday);
  CHECK(SimTime::at(5, 0).day_of_week() == Weekday::Saturday);
  CHECK(SimTime::at(5, 0).is_weekend());
  CHECK(SimTime::at(6, 23, 59).is_weekend());
  CHECK_FALSE(SimTime::at(7, 0).is_weekend());
  CHECK(SimTime::at(8, 9, 30).minute_of_day() == 570);
  CHECK(SimTime::at(8, 9, 30).day_index() == 8);
  CHECK(format_clock(570) == "09:30");
  CHECK(std::string(weekday_name(Weekday::Friday)) == "Fri");
}
