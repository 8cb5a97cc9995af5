#include "officesim/error.hpp"

namespace officesim {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedDocument: return "MalformedDocument";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::DanglingApplianceRef: return "DanglingApplianceRef";
    case ErrorCode::OccupantInNonOffice: return "OccupantInNonOffice";
    case ErrorCode::InvalidPopulationSpec: return "InvalidPopulationSpec";
    case ErrorCode::InsufficientCapacity: return "InsufficientCapacity";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::InconsistentState: return "InconsistentState";
    case ErrorCode::NotOwner: return "NotOwner";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::InvalidScenario: return "InvalidScenario";
    case ErrorCode::IncompleteFinalBin: return "IncompleteFinalBin";
    case ErrorCode::MissingTimeline: return "MissingTimeline";
    case ErrorCode::ReconstructionMismatch: return "ReconstructionMismatch";
    case ErrorCode::EmptyWindow: return "EmptyWindow";
  }
  return "Unknown";
}

bool is_config_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::InconsistentState:
    case ErrorCode::NotOwner:
    case ErrorCode::ReconstructionMismatch:
    case ErrorCode::MissingTimeline:
      return false;
    default:
      return true;
  }
}

SimError::SimError(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace officesim
