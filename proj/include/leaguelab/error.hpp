#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace leaguelab {

enum class ErrorCode {
  InvalidValue,
  CountsRequired,
  EmptyPair,
  EmptyTable,
  EmptyInput,
  SelfPair,
  NegativeGoals,
  UnknownTeam,
  DuplicateTeam,
  DomainMismatch,
  IncompleteMatrix,
  IncompleteModel,
  Coverage,
  Parse,
  Syntax,
  EmptyCommand,
  DuplicateParam,
  UnknownFixture,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidValue: return "invalid-value";
    case ErrorCode::CountsRequired: return "counts-required";
    case ErrorCode::EmptyPair: return "empty-pair";
    case ErrorCode::EmptyTable: return "empty-table";
    case ErrorCode::EmptyInput: return "empty-input";
    case ErrorCode::SelfPair: return "self-pair";
    case ErrorCode::NegativeGoals: return "negative-goals";
    case ErrorCode::UnknownTeam: return "unknown-team";
    case ErrorCode::DuplicateTeam: return "duplicate-team";
    case ErrorCode::DomainMismatch: return "domain-mismatch";
    case ErrorCode::IncompleteMatrix: return "incomplete-matrix";
    case ErrorCode::IncompleteModel: return "incomplete-model";
    case ErrorCode::Coverage: return "coverage-mismatch";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::Syntax: return "syntax";
    case ErrorCode::EmptyCommand: return "empty-command";
    case ErrorCode::DuplicateParam: return "duplicate-param";
    case ErrorCode::UnknownFixture: return "unknown-fixture";
  }
  return "unknown";
}

/// Every failure raised by the library carries a machine-checkable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace leaguelab
