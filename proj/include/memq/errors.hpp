// Copyright 2026 The memq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MEMQ_ERRORS_HPP_
#define MEMQ_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace memq {

enum class ErrorCode {
  kInvalidParameter,
  kNotCompletelyPositive,
  kDimensionMismatch,
  kUnknownSubsystem,
  kNonIsometry,
  kStepTooLarge,
  kUnstableOrder,
  kInvalidConfig,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidParameter: return "invalid-parameter";
    case ErrorCode::kNotCompletelyPositive: return "not-completely-positive";
    case ErrorCode::kDimensionMismatch: return "dimension-mismatch";
    case ErrorCode::kUnknownSubsystem: return "unknown-subsystem";
    case ErrorCode::kNonIsometry: return "non-isometry";
    case ErrorCode::kStepTooLarge: return "step-too-large";
    case ErrorCode::kUnstableOrder: return "unstable-order";
    case ErrorCode::kInvalidConfig: return "invalid-config";
  }
  return "unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace memq

#endif  // MEMQ_ERRORS_HPP_
