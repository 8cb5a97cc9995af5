#include "officesim/building.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "officesim/rng.hpp"

namespace officesim {

using nlohmann::json;

std::string_view to_string(RoomKind kind) {
  switch (kind) {
    case RoomKind::Office: return "office";
    case RoomKind::Corridor: return "corridor";
    case RoomKind::Facility: return "facility";
  }
  return "office";
}

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw SimError(ErrorCode::MalformedDocument, what);
}

RoomKind parse_room_kind(const std::string& text, const std::string& where) {
  std::string lower = text;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "office") return RoomKind::Office;
  if (lower == "corridor") return RoomKind::Corridor;
  if (lower == "facility") return RoomKind::Facility;
  malformed(where + ".kind: unknown room kind '" + text + "'");
}

std::vector<std::string> string_list(const json& node, const std::string& where) {
  if (!node.is_array()) malformed(where + ": expected an array of ids");
  std::vector<std::string> out;
  out.reserve(node.size());
  for (std::size_t i = 0; i < node.size(); ++i) {
    if (!node[i].is_string()) malformed(where + "[" + std::to_string(i) + "]: expected a string id");
    out.push_back(node[i].get<std::string>());
  }
  return out;
}

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) malformed(where + ": missing key '" + key + "'");
  return *it;
}

}  // namespace

PlanTotals BuildingPlan::totals() const {
  PlanTotals t;
  t.rooms = rooms.size();
  for (const auto& r : rooms) {
    t.lights += r.light_ids.size();
    t.computers += r.computer_ids.size();
  }
  t.users = occupants.size();
  return t;
}

const Room* BuildingPlan::find_room(std::string_view id) const {
  auto it = std::find_if(rooms.begin(), rooms.end(), [&](const Room& r) { return r.id == id; });
  return it == rooms.end() ? nullptr : &*it;
}

std::vector<PlanIssue> validate_plan(const BuildingPlan& plan) {
  std::vector<PlanIssue> issues;
  auto issue = [&](ErrorCode code, std::string msg) { issues.push_back({code, std::move(msg)}); };

  std::unordered_map<std::string, const Room*> rooms_by_id;
  for (const auto& room : plan.rooms) {
    if (room.id.empty()) issue(ErrorCode::MalformedDocument, "room with empty id");
    if (!rooms_by_id.emplace(room.id, &room).second) {
      issue(ErrorCode::DuplicateId, "room id '" + room.id + "' declared more than once");
    }
  }

  // appliance id -> owning room
  std::unordered_map<std::string, std::string> placed;
  for (const auto& room : plan.rooms) {
    if (room.kind == RoomKind::Corridor && !room.computer_ids.empty()) {
      issue(ErrorCode::MalformedDocument, "corridor '" + room.id + "' holds computers");
    }
    for (const auto* list : {&room.light_ids, &room.computer_ids}) {
      for (const auto& id : *list) {
        auto [it, fresh] = placed.emplace(id, room.id);
        if (!fresh) {
          issue(ErrorCode::DuplicateId, "appliance '" + id + "' appears in rooms '" + it->second +
                                            "' and '" + room.id + "'");
        }
      }
    }
    if (room.corridor_id) {
      auto it = rooms_by_id.find(*room.corridor_id);
      if (it == rooms_by_id.end() || it->second->kind != RoomKind::Corridor) {
        issue(ErrorCode::MalformedDocument,
              "room '" + room.id + "' names corridor '" + *room.corridor_id + "' which is not a corridor");
      }
    }
  }

  auto check_inventory = [&](const std::optional<std::vector<std::string>>& declared,
                             bool lights) {
    if (!declared) return;
    std::unordered_set<std::string> ids;
    for (const auto& id : *declared) {
      if (!ids.insert(id).second) issue(ErrorCode::DuplicateId, "appliance '" + id + "' declared twice");
    }
    for (const auto& room : plan.rooms) {
      for (const auto& id : lights ? room.light_ids : room.computer_ids) {
        if (!ids.count(id)) {
          issue(ErrorCode::DanglingApplianceRef,
                "room '" + room.id + "' references undeclared " + (lights ? "light" : "computer") +
                    " '" + id + "'");
        }
      }
    }
    for (const auto& id : *declared) {
      if (!placed.count(id)) {
        issue(ErrorCode::DanglingApplianceRef, "declared appliance '" + id + "' is in no room");
      }
    }
  };
  check_inventory(plan.declared_lights, true);
  check_inventory(plan.declared_computers, false);

  std::unordered_set<int> users;
  std::unordered_set<std::string> claimed;
  for (const auto& occ : plan.occupants) {
    if (!users.insert(occ.user_id).second) {
      issue(ErrorCode::DuplicateId, "user " + std::to_string(occ.user_id) + " seated twice");
    }
    auto it = rooms_by_id.find(occ.office_id);
    if (it == rooms_by_id.end() || it->second->kind != RoomKind::Office) {
      issue(ErrorCode::OccupantInNonOffice,
            "user " + std::to_string(occ.user_id) + " assigned to '" + occ.office_id +
                "' which is not an office");
      continue;
    }
    if (occ.computer_id) {
      const auto& pcs = it->second->computer_ids;
      if (std::find(pcs.begin(), pcs.end(), *occ.computer_id) == pcs.end()) {
        issue(ErrorCode::DanglingApplianceRef, "user " + std::to_string(occ.user_id) +
                                                   " owns computer '" + *occ.computer_id +
                                                   "' not in office '" + occ.office_id + "'");
      } else if (!claimed.insert(*occ.computer_id).second) {
        issue(ErrorCode::DuplicateId, "computer '" + *occ.computer_id + "' has two owners");
      }
    }
  }
  return issues;
}

BuildingPlan parse_building_plan(const json& doc) {
  if (!doc.is_object()) malformed("plan: expected a JSON object");
  BuildingPlan plan;
  const auto& rooms = require(doc, "rooms", "plan");
  if (!rooms.is_array()) malformed("plan.rooms: expected an array");
  for (std::size_t i = 0; i < rooms.size(); ++i) {
    const std::string where = "plan.rooms[" + std::to_string(i) + "]";
    const auto& node = rooms[i];
    if (!node.is_object()) malformed(where + ": expected an object");
    Room room;
    const auto& id = require(node, "id", where);
    if (!id.is_string()) malformed(where + ".id: expected a string");
    room.id = id.get<std::string>();
    const auto& kind = require(node, "kind", where);
    if (!kind.is_string()) malformed(where + ".kind: expected a string");
    room.kind = parse_room_kind(kind.get<std::string>(), where);
    if (node.contains("lights")) room.light_ids = string_list(node["lights"], where + ".lights");
    if (node.contains("computers")) {
      room.computer_ids = string_list(node["computers"], where + ".computers");
    }
    if (node.contains("corridor")) {
      if (!node["corridor"].is_string()) malformed(where + ".corridor: expected a string");
      room.corridor_id = node["corridor"].get<std::string>();
    }
    plan.rooms.push_back(std::move(room));
  }
  if (doc.contains("lights")) plan.declared_lights = string_list(doc["lights"], "plan.lights");
  if (doc.contains("computers")) {
    plan.declared_computers = string_list(doc["computers"], "plan.computers");
  }
  if (doc.contains("occupants")) {
    const auto& occs = doc["occupants"];
    if (!occs.is_array()) malformed("plan.occupants: expected an array");
    for (std::size_t i = 0; i < occs.size(); ++i) {
      const std::string where = "plan.occupants[" + std::to_string(i) + "]";
      const auto& node = occs[i];
      if (!node.is_object()) malformed(where + ": expected an object");
      Occupant occ;
      const auto& uid = require(node, "user_id", where);
      if (!uid.is_number_integer()) malformed(where + ".user_id: expected an integer");
      occ.user_id = uid.get<int>();
      const auto& office = require(node, "office_id", where);
      if (!office.is_string()) malformed(where + ".office_id: expected a string");
      occ.office_id = office.get<std::string>();
      if (node.contains("computer_id") && !node["computer_id"].is_null()) {
        if (!node["computer_id"].is_string()) malformed(where + ".computer_id: expected a string");
        occ.computer_id = node["computer_id"].get<std::string>();
      }
      plan.occupants.push_back(std::move(occ));
    }
  }
  return plan;
}

BuildingPlan load_building_plan(const json& doc) {
  BuildingPlan plan = parse_building_plan(doc);
  const auto issues = validate_plan(plan);
  if (!issues.empty()) {
    std::ostringstream msg;
    for (std::size_t i = 0; i < issues.size(); ++i) {
      if (i) msg << "; ";
      msg << to_string(issues[i].code) << " " << issues[i].message;
    }
    throw SimError(issues.front().code, msg.str());
  }
  return plan;
}

BuildingPlan load_building_plan_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    malformed(std::string("plan: ") + e.what());
  }
  return load_building_plan(doc);
}

BuildingPlan load_building_plan_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) malformed("cannot open plan file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return load_building_plan_text(buf.str());
}

json to_json(const BuildingPlan& plan) {
  json doc;
  doc["rooms"] = json::array();
  for (const auto& room : plan.rooms) {
    json r{{"id", room.id},
           {"kind", std::string(to_string(room.kind))},
           {"lights", room.light_ids},
           {"computers", room.computer_ids}};
    if (room.corridor_id) r["corridor"] = *room.corridor_id;
    doc["rooms"].push_back(std::move(r));
  }
  if (plan.declared_lights) doc["lights"] = *plan.declared_lights;
  if (plan.declared_computers) doc["computers"] = *plan.declared_computers;
  if (!plan.occupants.empty()) {
    doc["occupants"] = json::array();
    for (const auto& occ : plan.occupants) {
      json o{{"user_id", occ.user_id}, {"office_id", occ.office_id}};
      if (occ.computer_id) o["computer_id"] = *occ.computer_id;
      doc["occupants"].push_back(std::move(o));
    }
  }
  return doc;
}

BuildingPlan default_building_plan() {
  constexpr int kOffices = 40;
  constexpr int kCorridors = 4;
  constexpr int kCorridorLights = 12;
  constexpr int kFacilityLights = 5;
  constexpr int kDefaultUsers = 213;

  auto numbered = [](const char* prefix, int n) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%s%02d", prefix, n);
    return std::string(buf);
  };
  auto fill = [](Room& room, int lights, int computers) {
    for (int i = 1; i <= lights; ++i) room.light_ids.push_back(room.id + "-L" + std::to_string(i));
    for (int i = 1; i <= computers; ++i) {
      room.computer_ids.push_back(room.id + "-PC" + std::to_string(i));
    }
  };

  BuildingPlan plan;
  for (int c = 1; c <= kCorridors; ++c) {
    Room room{numbered("C", c), RoomKind::Corridor, {}, {}, std::nullopt};
    fill(room, kCorridorLights, 0);
    plan.rooms.push_back(std::move(room));
  }
  // 176 office lights: 16 offices with 5, 24 with 4.
  // 180 computers: 20 offices with 5, 20 with 4.
  for (int o = 1; o <= kOffices; ++o) {
    Room room{numbered("O", o), RoomKind::Office, {}, {}, numbered("C", (o - 1) / 10 + 1)};
    fill(room, o <= 16 ? 5 : 4, o <= 20 ? 5 : 4);
    plan.rooms.push_back(std::move(room));
  }
  const char* facilities[] = {"F01-kitchen", "F02-toilets", "F03-lab"};
  for (int f = 0; f < 3; ++f) {
    Room room{facilities[f], RoomKind::Facility, {}, {}, numbered("C", f + 1)};
    fill(room, kFacilityLights, 0);
    plan.rooms.push_back(std::move(room));
  }

  std::vector<int> ids(kDefaultUsers);
  for (int i = 0; i < kDefaultUsers; ++i) ids[i] = i;
  plan.occupants = assign_occupants(plan, ids, 2010, CapacityRule::Overflow);
  std::sort(plan.occupants.begin(), plan.occupants.end(),
            [](const Occupant& a, const Occupant& b) { return a.user_id < b.user_id; });
  return plan;
}

std::vector<Occupant> assign_occupants(const BuildingPlan& plan, std::span<const int> user_ids,
                                       std::uint64_t seed, CapacityRule rule) {
  struct Seat {
    std::string office;
    std::optional<std::string> computer;
  };
  std::vector<Seat> seats;
  std::vector<const Room*> offices;
  for (const auto& room : plan.rooms) {
    if (room.kind != RoomKind::Office) continue;
    offices.push_back(&room);
    if (room.computer_ids.empty()) {
      seats.push_back({room.id, std::nullopt});
    } else {
      for (const auto& pc : room.computer_ids) seats.push_back({room.id, pc});
    }
  }
  if (offices.empty() && !user_ids.empty()) {
    throw SimError(ErrorCode::InsufficientCapacity, "plan has no office rooms");
  }
  if (rule == CapacityRule::Strict && user_ids.size() > seats.size()) {
    throw SimError(ErrorCode::InsufficientCapacity,
                   std::to_string(user_ids.size()) + " users but only " +
                       std::to_string(seats.size()) + " office seats");
  }

  const CounterRng rng(seed);
  auto shuffle = [&](auto& items, std::uint32_t purpose) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(
          rng.uniform_int(Stream::Assignment, purpose, i, 0, 0, static_cast<std::int64_t>(i)));
      std::swap(items[i - 1], items[j]);
    }
  };
  std::vector<int> users(user_ids.begin(), user_ids.end());
  shuffle(users, 0);
  shuffle(seats, 1);

  std::vector<Occupant> out;
  out.reserve(users.size());
  std::size_t next_overflow = 0;
  for (std::size_t i = 0; i < users.size(); ++i) {
    if (i < seats.size()) {
      out.push_back({users[i], seats[i].office, seats[i].computer});
    } else {
      out.push_back({users[i], offices[next_overflow]->id, std::nullopt});
      next_overflow = (next_overflow + 1) % offices.size();
    }
  }
  return out;
}

}  // namespace officesim
