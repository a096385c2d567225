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

#ifndef MEMQ_VALIDATE_HPP_
#define MEMQ_VALIDATE_HPP_

#include <string>
#include <vector>

namespace memq {

enum class CheckStatus { kPass, kFail, kReported };

const char* to_string(CheckStatus s);

struct ValidationCheck {
  std::string name;
  double max_deviation;
  double tolerance;
  CheckStatus status;
  std::string note;
};

struct ValidationOptions {
  double alpha = 0.1;
  double g = 0.5;
  double t_max = 10.0;
  int n_points = 50;
  // Multiplies every tolerance; must be finite and positive.
  double tolerance_scale = 1.0;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool passed() const;
};

// Oracle-versus-closed-form comparisons: inverse Laplace, Volterra
// integration, Kraus extraction, reduced-state matrices, and the
// typeset A-E matrix discrepancy.
ValidationReport run_validation(const ValidationOptions& options = {});

}  // namespace memq

#endif  // MEMQ_VALIDATE_HPP_
