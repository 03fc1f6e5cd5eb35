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


// Forward evaluation of a fully specified propulsion system.

#pragma once

#include <optional>
#include <vector>

#include "propsizer/core_models.hpp"
#include "propsizer/error.hpp"
#include "propsizer/stat_models.hpp"

namespace propsizer {

struct PropulsionSystem {
  PropellerParams propeller;
  MotorParams motor;
  EscParams esc;
  BatteryParams battery;
  int rotor_count = 1;
  Environment environment;
  double other_current_a = kDefaultOtherCurrent;
  BladeCoeffs coeffs;
};

struct HoverSolution {
  OperatingPoint point;
  double battery_current_a = 0.0;  // I_b0
  int iterations = 0;
};

struct PerformanceReport {
  OperatingPoint hover;
  double hover_battery_current_a = 0.0;
  double endurance_min = 0.0;
  OperatingPoint full_throttle;
  double full_throttle_thrust_n = 0.0;
  std::optional<double> system_weight_n;
  double eta_tm = 0.0;
  double eta_motor = 0.0;
  double eta_esc = 0.0;
  double eta_battery = 0.0;
  bool hover_feasible = false;
  bool safe = false;
  std::vector<Violation> violations;
};

inline constexpr double kHoverTolerance = 1e-6;  // amperes
inline constexpr int kHoverMaxIterations = 100;

// Hover operating point with the ESC/battery coupling resolved by fixed-point
// iteration on I_b. Throws kThrottleInfeasible (sigma > 1), kBrownout or
// kNumerical.
HoverSolution hover_point(const PropulsionSystem& system, double hover_thrust_n);

// Steady state at sigma = 1, by bisection on N. Throws kModelInconsistent if
// no torque balance exists in the bracket.
OperatingPoint full_throttle_point(const PropulsionSystem& system);

double endurance(const PropulsionSystem& system, double hover_thrust_n);

// Empty iff the system is safe for `max_thrust_n` per propeller. `k_c` is the
// correction used for the motor's maximum thrust.
std::vector<Violation> check_safety(const PropulsionSystem& system,
                                    double max_thrust_n,
                                    double k_c = kDefaultCorrection);

// n_p (G_p + G_m + G_e) + G_b. Missing weights are predicted from `models`
// (the battery from its energy density); throws kDomain when neither exists.
double system_weight(const PropulsionSystem& system,
                     const WeightModels* models = nullptr);

// Hover, endurance, full throttle, safety and weight in one report. Hover
// infeasibility is reported through flags and violations.
PerformanceReport evaluate(const PropulsionSystem& system,
                           double hover_thrust_n, double max_thrust_n,
                           const WeightModels* models = nullptr);

}  // namespace propsizer
