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


// Exhaustive combination search, the reference the analytical pipeline is
// checked against.

#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "propsizer/optimizer.hpp"

namespace propsizer {

struct BruteForceOptions {
  std::size_t max_combinations = 1'000'000;
  PackLimits pack_limits;
  BladeCoeffs coeffs;
  unsigned threads = 1;
};

struct BruteForceStats {
  // Propeller x motor x ESC x battery-record combinations visited.
  std::size_t combinations = 0;
  // Pack compositions scored across all combinations.
  std::size_t pack_evaluations = 0;
  std::size_t hover_evaluations = 0;
  std::size_t feasible = 0;
};

// Minimal-weight combination passing check_safety with endurance >=
// t_hover. Throws kSearchTooLarge above the cap and kDesignInfeasible when
// nothing is feasible.
DesignResult brute_force(const DesignRequirements& req, const Catalog& catalog,
                         const StatModels& stat,
                         const BruteForceOptions& options = {},
                         BruteForceStats* stats = nullptr);

struct MethodOutcome {
  bool ok = false;
  std::string error;
  double weight_n = 0.0;
  double endurance_min = 0.0;
  double wall_time_ms = 0.0;
  std::size_t evaluations = 0;  // hover solves
  std::optional<DesignResult> design;
};

struct ComparisonReport {
  MethodOutcome analytical;
  MethodOutcome brute_force;
  std::size_t combinations = 0;
  std::size_t catalog_sizes[4] = {0, 0, 0, 0};  // propeller, motor, ESC, battery
  // brute_force.wall_time_ms / analytical.wall_time_ms, 0 if either failed.
  double time_ratio = 0.0;
  // Analytical weight over brute-force weight, 0 if either failed.
  double weight_ratio = 0.0;
};

ComparisonReport compare(const DesignRequirements& req, const Catalog& catalog,
                         const StatModels& stat,
                         const OptimizerOptions& optimizer_options = {},
                         const BruteForceOptions& brute_options = {});

}  // namespace propsizer
