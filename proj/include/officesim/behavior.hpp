#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "officesim/population.hpp"
#include "officesim/rng.hpp"
#include "officesim/sim_time.hpp"

namespace officesim {

inline constexpr double kLightOnW = 60.0;
inline constexpr double kComputerOnW = 70.0;
inline constexpr double kComputerStandByW = 25.0;

// Timing and hazard knobs of the occupant model. Defaults reproduce the
// reference behaviour; the ones marked "assumed" have no measured
// basis and are exposed for sensitivity runs.
struct BehaviorParams {
  int corridor_walk_minutes = 2;
  int computer_start_minutes = 2;
  // per tick while working with the computer
  double p_standby = 0.05;
  // assumed: expected temporary excursions per working day
  double excursions_per_day = 2.0;
  int facility_min_minutes = 1;
  int facility_max_minutes = 10;
  // assumed: chance of one mid-day long absence (meetings elsewhere)
  double p_midday_long_leave = 0.3;
  int midday_leave_min_minutes = 30;
  int midday_leave_max_minutes = 120;
  int light_timeout_minutes = 20;
  // absences shorter than this are temporary
  int long_leave_minutes = 20;

  void validate() const;
};

enum class LeaveKind { Temporary, Long };

std::string_view to_string(LeaveKind kind);

struct SwitchProbabilities {
  double p_switch_off;
  double p_email;

  bool operator==(const SwitchProbabilities&) const = default;
};

// Banded lookup: [95,100] champion, [70,95) saver, [30,70) regular,
// [0,30) big user. Throws OutOfRange outside [0,100].
SwitchProbabilities awareness_to_probabilities(double awareness);

struct MiddayLeave {
  int start;     // minute of day
  int duration;  // minutes
};

struct DailySchedule {
  int arrival;  // minute of day
  int leave;    // minute of day, >= arrival
  std::optional<MiddayLeave> midday;
};

// Weekdays always yield a schedule; weekends only with probability p_weekend,
// reusing the weekday windows.
std::optional<DailySchedule> sample_daily_schedule(const EnergyUser& user, std::int64_t day,
                                                   double p_weekend, const BehaviorParams& params,
                                                   const CounterRng& rng);

// ---- user state chart ------------------------------------------------------

enum class OfficeActivity { WorkingWithoutComputer, WorkingWithComputer };
enum class Heading { ToOffice, ToFacility, ToExit };

struct OutOfSchool {};
struct InCorridor {
  std::int64_t since;
  Heading heading;
  std::size_t facility = 0;  // target room when heading to a facility
};
struct InOwnOffice {
  OfficeActivity activity;
  std::int64_t activity_since;
};
struct InOtherRooms {
  std::size_t room;
  std::int64_t entered;
  std::int64_t return_deadline;
};

using UserState = std::variant<OutOfSchool, InCorridor, InOwnOffice, InOtherRooms>;

// Flattened state used in logs and invariant checks.
enum class UserStateKind {
  OutOfSchool,
  InCorridor,
  WorkingWithoutComputer,
  WorkingWithComputer,
  InOtherRooms,
};

UserStateKind kind_of(const UserState& state);
std::string_view to_string(UserStateKind kind);

struct UserAgent {
  EnergyUser profile;
  std::size_t office = 0;                 // room index
  std::optional<std::size_t> corridor;    // room index
  std::optional<std::size_t> computer;    // own computer index
  std::optional<DailySchedule> today;
  UserState state = OutOfSchool{};
  bool midday_taken = false;
  std::optional<std::int64_t> return_at;  // pending return from a long absence
  std::optional<LeaveKind> pending;       // set while away from the office

  // Room the user occupies right now, if any.
  std::optional<std::size_t> location() const;
  // Resets per-day bookkeeping and installs the day's schedule.
  void begin_day(std::optional<DailySchedule> schedule);
};

enum class ComputerPower { Off, On, StandBy };

std::string_view to_string(ComputerPower power);
double power_w(ComputerPower power);

struct StateChanged {
  UserStateKind from;
  UserStateKind to;
};
struct ComputerRequest {
  std::size_t computer;
  ComputerPower target;
};
struct LeftOffice {
  std::size_t office;
  LeaveKind kind;
};

struct BehaviorEvent {
  int user_id;
  std::variant<StateChanged, ComputerRequest, LeftOffice> what;
};

// What a user step may look at besides its own agent.
struct WorldView {
  std::span<const std::size_t> facilities;     // facility room indices
  std::span<const std::size_t> computer_room;  // room index of each computer
};

// Per-tick random draws of a user, keyed by slot so each decision has its own
// stream position.
enum UserDraw : std::uint32_t {
  kDrawExcursion = 0,
  kDrawStandby = 1,
  kDrawSwitchOff = 2,
  kDrawFacility = 3,
  kDrawFacilityStay = 4,
  kDrawLeaveComputer = 5,
};

// One tick of the energy-user state chart. At most one top-level transition
// per tick. Throws InconsistentState if the user's computer sits outside its
// office.
std::vector<BehaviorEvent> step_user(UserAgent& user, SimTime now, const WorldView& world,
                                     double threshold, const BehaviorParams& params,
                                     const CounterRng& rng);

// ---- passive appliances ----------------------------------------------------

enum class LightControl { SensorAutomated, StaffSwitched };

struct LightState {
  bool on = false;
  LightControl control = LightControl::SensorAutomated;
  // minutes since the room was vacated; 0 on the vacating tick
  int vacancy_timer = 0;
  bool was_occupied = false;

  double power() const { return on ? kLightOnW : 0.0; }
  bool operator==(const LightState&) const = default;
};

struct Vacating {
  double awareness;  // of the last occupant to leave
  LeaveKind kind;
};

// `u` is the uniform draw used for the staff switch-off decision.
LightState step_light(LightState light, bool occupied, std::optional<Vacating> vacating, double u,
                      const BehaviorParams& params);

struct ComputerState {
  ComputerPower state = ComputerPower::Off;
  std::optional<int> owner;

  double power() const { return power_w(state); }
  bool operator==(const ComputerState&) const = default;
};

struct OwnerCommand {
  int user_id;
  ComputerPower target;
};

// Applies the owner's request; computers never change state on their own.
// Throws NotOwner for requests from anyone else.
ComputerState step_computer(ComputerState computer, std::optional<OwnerCommand> command);

}  // namespace officesim
