#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "officesim/error.hpp"

namespace officesim {

enum class RoomKind { Office, Corridor, Facility };

std::string_view to_string(RoomKind kind);

struct Room {
  std::string id;
  RoomKind kind = RoomKind::Office;
  std::vector<std::string> light_ids;
  std::vector<std::string> computer_ids;
  // Corridor an occupant walks through to reach this room. Unset means the
  // engine picks one round-robin.
  std::optional<std::string> corridor_id;

  bool operator==(const Room&) const = default;
};

struct Occupant {
  int user_id = 0;
  std::string office_id;
  std::optional<std::string> computer_id;

  bool operator==(const Occupant&) const = default;
};

struct PlanTotals {
  std::size_t rooms = 0;
  std::size_t lights = 0;
  std::size_t computers = 0;
  std::size_t users = 0;

  bool operator==(const PlanTotals&) const = default;
};

struct PlanIssue {
  ErrorCode code;
  std::string message;
};

struct BuildingPlan {
  std::vector<Room> rooms;
  std::vector<Occupant> occupants;
  // Optional appliance inventories. When present, every room reference must
  // name a declared appliance.
  std::optional<std::vector<std::string>> declared_lights;
  std::optional<std::vector<std::string>> declared_computers;

  PlanTotals totals() const;
  const Room* find_room(std::string_view id) const;

  bool operator==(const BuildingPlan&) const = default;
};

// All structural problems in a plan; empty means valid.
std::vector<PlanIssue> validate_plan(const BuildingPlan& plan);

// Parse and validate. Throws SimError with the first issue's code; the message
// lists every issue found.
BuildingPlan load_building_plan(const nlohmann::json& doc);
BuildingPlan load_building_plan_text(std::string_view text);
BuildingPlan load_building_plan_file(const std::filesystem::path& path);

// Parse without validation (used by `validate` to report all issues).
BuildingPlan parse_building_plan(const nlohmann::json& doc);

nlohmann::json to_json(const BuildingPlan& plan);

// Synthetic 47-room layout carrying the reference inventory: 40 offices,
// 4 corridors, 3 facility rooms, 239 lights, 180 computers, 213 occupants.
BuildingPlan default_building_plan();

enum class CapacityRule {
  // One seat per computer (minimum one per office); more users than seats fails.
  Strict,
  // Computer seats fill first, remaining users share offices without a computer.
  Overflow,
};

// Seats every user id in an office. Users seated at a computer own it.
std::vector<Occupant> assign_occupants(const BuildingPlan& plan, std::span<const int> user_ids,
                                       std::uint64_t seed,
                                       CapacityRule rule = CapacityRule::Overflow);

}  // namespace officesim
