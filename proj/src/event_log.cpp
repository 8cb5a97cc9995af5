#include "officesim/event_log.hpp"

namespace officesim {

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::UserState: return "user_state";
    case EventKind::LeftOffice: return "left_office";
    case EventKind::Contact: return "contact";
    case EventKind::Computer: return "computer";
    case EventKind::Light: return "light";
    case EventKind::RoomOccupied: return "room_occupied";
    case EventKind::RoomVacated: return "room_vacated";
    case EventKind::Schedule: return "schedule";
  }
  return "?";
}

std::string EventLog::agent_id(const LogEvent& e) const {
  switch (e.agent_kind) {
    case AgentKind::User: return "user:" + std::to_string(e.agent);
    case AgentKind::Light: return "light:" + light_ids.at(e.agent);
    case AgentKind::Computer: return "computer:" + computer_ids.at(e.agent);
    case AgentKind::Room: return "room:" + room_ids.at(e.agent);
  }
  return "?";
}

std::string EventLog::detail_text(const LogEvent& e) const {
  switch (e.kind) {
    case EventKind::UserState:
      return std::string(to_string(static_cast<UserStateKind>(e.detail)));
    case EventKind::LeftOffice:
      return std::string(to_string(static_cast<LeaveKind>(e.detail)));
    case EventKind::Contact: return "to=user:" + std::to_string(e.detail);
    case EventKind::Computer:
      return std::string(to_string(static_cast<ComputerPower>(e.detail)));
    case EventKind::Light: return e.detail ? "On" : "Off";
    case EventKind::RoomOccupied: return "occupants=" + std::to_string(e.detail);
    case EventKind::RoomVacated: return "occupants=0";
    case EventKind::Schedule:
      if (e.detail < 0) return "absent";
      return format_clock(e.detail / 1440) + "-" + format_clock(e.detail % 1440);
  }
  return "";
}

void EventLog::write_csv(std::ostream& out) const {
  out << "tick,agent_id,event_kind,detail\n";
  for (const auto& e : events) {
    out << e.tick << ',' << agent_id(e) << ',' << to_string(e.kind) << ',' << detail_text(e) << '\n';
  }
}

}  // namespace officesim
