#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "officesim/behavior.hpp"

namespace officesim {

enum class AgentKind : std::uint8_t { User, Light, Computer, Room };
enum class EventKind : std::uint8_t {
  UserState,     // detail: UserStateKind entered
  LeftOffice,    // detail: LeaveKind
  Contact,       // detail: recipient user id
  Computer,      // detail: ComputerPower entered
  Light,         // detail: 1 on, 0 off
  RoomOccupied,  // detail: occupant count
  RoomVacated,   // detail: 0
  Schedule,      // detail: arrival minute * 1440 + leave minute, -1 when absent
};

std::string_view to_string(EventKind kind);

struct LogEvent {
  std::int64_t tick;
  AgentKind agent_kind;
  EventKind kind;
  std::uint32_t agent;  // index (appliances, rooms) or user id
  std::int32_t detail;

  bool operator==(const LogEvent&) const = default;
};

// Run record. Appliance and room events are always recorded (the utilisation
// report is computed from them); user-level events only on request.
// CSV schema: tick,agent_id,event_kind,detail with agent_id "<kind>:<name>".
struct EventLog {
  std::int64_t horizon_ticks = 0;
  double base_load_w = 0.0;
  std::vector<std::string> light_ids;
  std::vector<std::string> computer_ids;
  std::vector<std::string> room_ids;
  std::vector<std::size_t> light_room;
  // appliance state at tick 0 of the recorded horizon
  std::vector<bool> initial_light_on;
  std::vector<ComputerPower> initial_computer;
  std::vector<LogEvent> events;

  void record(std::int64_t tick, AgentKind agent_kind, std::uint32_t agent, EventKind kind,
              std::int32_t detail) {
    events.push_back({tick, agent_kind, kind, agent, detail});
  }

  std::string agent_id(const LogEvent& e) const;
  std::string detail_text(const LogEvent& e) const;
  void write_csv(std::ostream& out) const;
};

}  // namespace officesim
