#pragma once

#include <stdexcept>
#include <string>

namespace maxshape {

enum class ErrorCode {
  EmptySet,
  DisconnectedResult,
  TargetTooSmall,
  NoRoom,
  GridTooLarge,
  SolverDiverged,
  NotEnoughModes,
  BadExponents,
  NoConvergence,
  NotNested,
  Overlap,
  MoveInapplicable,
  RepairFailed,
  InfeasibleLength,
  NotConverging,
  InvalidInput,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::DisconnectedResult: return "DisconnectedResult";
    case ErrorCode::TargetTooSmall: return "TargetTooSmall";
    case ErrorCode::NoRoom: return "NoRoom";
    case ErrorCode::GridTooLarge: return "GridTooLarge";
    case ErrorCode::SolverDiverged: return "SolverDiverged";
    case ErrorCode::NotEnoughModes: return "NotEnoughModes";
    case ErrorCode::BadExponents: return "BadExponents";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotNested: return "NotNested";
    case ErrorCode::Overlap: return "Overlap";
    case ErrorCode::MoveInapplicable: return "MoveInapplicable";
    case ErrorCode::RepairFailed: return "RepairFailed";
    case ErrorCode::InfeasibleLength: return "InfeasibleLength";
    case ErrorCode::NotConverging: return "NotConverging";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace maxshape
