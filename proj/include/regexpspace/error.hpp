// Copyright 2026 The regexpspace Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace regexpspace {

enum class ErrorCode {
  EmptyInput,
  UnbalancedParens,
  UnknownSymbol,
  PracticalNotation,
  Syntax,
  InvalidAlphabet,
  ForeignSymbol,
  BudgetExceeded,
  NotCovered,
  OracleGap,
  InsufficientPool,
  InsufficientWitnesses,
  PairingFailure,
  MalformedRecord,
  EmptyOutcomes,
  MissingExemplars,
  MissingResponse,
  Io,
  InvalidConfig,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::UnbalancedParens: return "UnbalancedParens";
    case ErrorCode::UnknownSymbol: return "UnknownSymbol";
    case ErrorCode::PracticalNotation: return "PracticalNotation";
    case ErrorCode::Syntax: return "Syntax";
    case ErrorCode::InvalidAlphabet: return "InvalidAlphabet";
    case ErrorCode::ForeignSymbol: return "ForeignSymbol";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NotCovered: return "NotCovered";
    case ErrorCode::OracleGap: return "OracleGap";
    case ErrorCode::InsufficientPool: return "InsufficientPool";
    case ErrorCode::InsufficientWitnesses: return "InsufficientWitnesses";
    case ErrorCode::PairingFailure: return "PairingFailure";
    case ErrorCode::MalformedRecord: return "MalformedRecord";
    case ErrorCode::EmptyOutcomes: return "EmptyOutcomes";
    case ErrorCode::MissingExemplars: return "MissingExemplars";
    case ErrorCode::MissingResponse: return "MissingResponse";
    case ErrorCode::Io: return "Io";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (notably the CLI) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace regexpspace
