#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace officesim {

enum class Weekday { Monday, Tuesday, Wednesday, Thursday, Friday, Saturday, Sunday };

inline constexpr std::int64_t kMinutesPerDay = 1440;
inline constexpr std::int64_t kMinutesPerWeek = 7 * kMinutesPerDay;

// Simulation clock. One tick is one minute; minute 0 is Monday 00:00.
class SimTime {
 public:
  constexpr SimTime() = default;
  constexpr explicit SimTime(std::int64_t minute_of_sim) : minute_(minute_of_sim) {}

  static constexpr SimTime at(std::int64_t day, std::int64_t hour, std::int64_t minute = 0) {
    return SimTime(day * kMinutesPerDay + hour * 60 + minute);
  }

  constexpr std::int64_t minute_of_sim() const { return minute_; }
  constexpr std::int64_t day_index() const { return minute_ / kMinutesPerDay; }
  constexpr int minute_of_day() const { return static_cast<int>(minute_ % kMinutesPerDay); }
  constexpr Weekday day_of_week() const { return static_cast<Weekday>(day_index() % 7); }
  constexpr bool is_weekend() const {
    const auto d = day_of_week();
    return d == Weekday::Saturday || d == Weekday::Sunday;
  }

  constexpr SimTime operator+(std::int64_t minutes) const { return SimTime(minute_ + minutes); }
  constexpr std::int64_t operator-(SimTime other) const { return minute_ - other.minute_; }
  constexpr auto operator<=>(const SimTime&) const = default;

 private:
  std::int64_t minute_ = 0;
};

// "HH:MM" for a minute of day.
std::string format_clock(int minute_of_day);
const char* weekday_name(Weekday day);

}  // namespace officesim
