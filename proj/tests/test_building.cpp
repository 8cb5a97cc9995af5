#include <doctest.h>

#include <algorithm>
#include <set>

#include "officesim/building.hpp"
#include "officesim/error.hpp"

using namespace officesim;
using nlohmann::json;

namespace {

ErrorCode load_error(const json& doc) {
  try {
    load_building_plan(doc);
  } catch (const SimError& e) {
    return e.code();
  }
  FAIL("plan was accepted");
  return ErrorCode::InconsistentState;
}

bool has_issue(const BuildingPlan& plan, ErrorCode code) {
  const auto issues = validate_plan(plan);
  return std::any_of(issues.begin(), issues.end(), [&](const PlanIssue& i) { return i.code == code; });
}

}  // namespace

TEST_CASE("default plan carries the reference inventory") {
  const auto plan = default_building_plan();
  CHECK(plan.totals() == PlanTotals{47, 239, 180, 213});
  CHECK(validate_plan(plan).empty());
  std::size_t with_computer = 0;
  for (const auto& o : plan.occupants) with_computer += o.computer_id.has_value();
  CHECK(with_computer == 180);
}

TEST_CASE("shipped default plan file matches the built-in plan") {
  const auto plan = load_building_plan_file(std::filesystem::path(OFFICESIM_DATA_DIR) / "default_plan.json");
  CHECK(plan == default_building_plan());
}

TEST_CASE("plan round-trips through json") {
  const auto plan = default_building_plan();
  CHECK(load_building_plan(to_json(plan)) == plan);
  CHECK(load_building_plan_text(to_json(plan).dump()) == plan);
}

TEST_CASE("one empty office with one light") {
  const auto plan = load_building_plan_text(R"({"rooms":[{"id":"A","kind":"office","lights":["A-L1"]}]})");
  CHECK(plan.totals() == PlanTotals{1, 1, 0, 0});
}

TEST_CASE("plan validation errors") {
  CHECK(load_error(json::parse(R"({"rooms":[{"id":"A","kind":"office","lights":["X"]}],"lights":["Y"]})")) ==
        ErrorCode::DanglingApplianceRef);
  CHECK(load_error(json::parse(R"({"rooms":[{"id":"A","kind":"office"},{"id":"A","kind":"office"}]})")) ==
        ErrorCode::DuplicateId);
  CHECK(load_error(json::parse(
            R"({"rooms":[{"id":"A","kind":"office","lights":["L"]},{"id":"B","kind":"office","lights":["L"]}]})")) ==
        ErrorCode::DuplicateId);
  CHECK(load_error(json::parse(R"({"rooms":[{"id":"C","kind":"corridor"}],
                                   "occupants":[{"user_id":1,"office_id":"C"}]})")) ==
        ErrorCode::OccupantInNonOffice);
  CHECK(load_error(json::parse(R"({"rooms":[{"id":"A","kind":"office","computers":["P"]},{"id":"B","kind":"office"}],
                                   "occupants":[{"user_id":1,"office_id":"B","computer_id":"P"}]})")) ==
        ErrorCode::DanglingApplianceRef);
  CHECK(load_error(json::parse(R"({"rooms":[{"id":"A","kind":"spaceship"}]})")) == ErrorCode::MalformedDocument);
  CHECK(load_error(json::parse(R"({"rooms":"nope"})")) == ErrorCode::MalformedDocument);
  CHECK_THROWS_AS(load_building_plan_text("{not json"), SimError);
}

TEST_CASE("validation reports every issue, not just the first") {
  BuildingPlan plan;
  plan.rooms = {{"A", RoomKind::Office, {"L1"}, {}, std::nullopt}, {"A", RoomKind::Office, {"L1"}, {}, std::nullopt}};
  plan.occupants = {{1, "missing", std::nullopt}};
  CHECK(validate_plan(plan).size() >= 3);
  CHECK(has_issue(plan, ErrorCode::DuplicateId));
  CHECK(has_issue(plan, ErrorCode::OccupantInNonOffice));
}

TEST_CASE("assign_occupants: two users share a two-computer office") {
  BuildingPlan plan;
  plan.rooms = {{"A", RoomKind::Office, {}, {"P1", "P2"}, std::nullopt}};
  const std::vector<int> ids{10, 11};
  const auto occ = assign_occupants(plan, ids, 1, CapacityRule::Strict);
  REQUIRE(occ.size() == 2);
  CHECK(occ[0].office_id == "A");
  CHECK(occ[1].office_id == "A");
  REQUIRE(occ[0].computer_id);
  REQUIRE(occ[1].computer_id);
  CHECK(*occ[0].computer_id != *occ[1].computer_id);
}

TEST_CASE("assign_occupants: strict rule rejects overflow") {
  BuildingPlan plan;
  plan.rooms = {{"A", RoomKind::Office, {"L"}, {}, std::nullopt}};
  const std::vector<int> ids{1, 2};
  try {
    assign_occupants(plan, ids, 1, CapacityRule::Strict);
    FAIL("expected InsufficientCapacity");
  } catch (const SimError& e) {
    CHECK(e.code() == ErrorCode::InsufficientCapacity);
  }
  CHECK(assign_occupants(plan, ids, 1, CapacityRule::Overflow).size() == 2);
}

TEST_CASE("assign_occupants: 213 users over the default inventory") {
  auto plan = default_building_plan();
  plan.occupants.clear();
  std::vector<int> ids(213);
  for (int i = 0; i < 213; ++i) ids[static_cast<std::size_t>(i)] = i;
  const auto occ = assign_occupants(plan, ids, 77);
  CHECK(occ.size() == 213);
  std::set<int> users;
  std::set<std::string> computers;
  for (const auto& o : occ) {
    users.insert(o.user_id);
    const auto* room = plan.find_room(o.office_id);
    REQUIRE(room);
    CHECK(room->kind == RoomKind::Office);
    if (o.computer_id) {
      CHECK(computers.insert(*o.computer_id).second);
      CHECK(std::count(room->computer_ids.begin(), room->computer_ids.end(), *o.computer_id) == 1);
    }
  }
  CHECK(users.size() == 213);
  CHECK(computers.size() <= 180);
  plan.occupants = occ;
  CHECK(validate_plan(plan).empty());
}
