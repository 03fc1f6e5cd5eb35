// Copyright 2026 The propsizer Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace propsizer {

// Failure modes are distinct so that callers (selection, search, the service
// layer) can react to each one differently. Nothing is clamped silently.
enum class ErrorCode {
  kDomain,              // argument outside the model's domain
  kThrottleInfeasible,  // required state needs sigma > 1
  kBrownout,            // ESC input voltage collapsed to <= 0
  kMotorInfeasible,     // U_mMax <= R_m * I_mMax
  kModelInconsistent,   // efficiency outside [0,1], no torque balance, ...
  kInfiniteEndurance,   // zero battery current
  kNumerical,           // iteration failed to converge
  kFit,                 // statistical fit impossible
  kOutOfCatalogRange,   // thrust beyond the last voltage tier
  kSelectionInfeasible, // no catalog record satisfies the floors
  kDesignInfeasible,    // an optimizer step failed
  kCatalog,             // unreadable / invalid catalog or model file
  kSearchTooLarge,      // brute-force cap exceeded
  kInvalidInput,        // malformed requirements or request
};

std::string_view to_string(ErrorCode code);

// One violated inequality, reported as data.
struct Violation {
  std::string constraint;
  double actual = 0.0;
  double limit = 0.0;
  std::string message;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Error(ErrorCode code, const std::string& message, std::string step,
        std::string constraint, std::vector<Violation> violations = {})
      : std::runtime_error(message),
        code_(code),
        step_(std::move(step)),
        constraint_(std::move(constraint)),
        violations_(std::move(violations)) {}

  ErrorCode code() const { return code_; }
  // Optimizer step that failed ("step4_motor_selection", ...), may be empty.
  const std::string& step() const { return step_; }
  // Binding constraint name, may be empty.
  const std::string& constraint() const { return constraint_; }
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  ErrorCode code_;
  std::string step_;
  std::string constraint_;
  std::vector<Violation> violations_;
};

}  // namespace propsizer
