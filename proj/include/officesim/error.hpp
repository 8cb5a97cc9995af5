#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace officesim {

enum class ErrorCode {
  MalformedDocument,
  DuplicateId,
  DanglingApplianceRef,
  OccupantInNonOffice,
  InvalidPopulationSpec,
  InsufficientCapacity,
  OutOfRange,
  InconsistentState,
  NotOwner,
  InvalidParams,
  InvalidScenario,
  IncompleteFinalBin,
  MissingTimeline,
  ReconstructionMismatch,
  EmptyWindow,
};

std::string_view to_string(ErrorCode code);

// Configuration problems map to CLI exit code 1, everything else to 2.
bool is_config_error(ErrorCode code);

class SimError : public std::runtime_error {
 public:
  SimError(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace officesim
