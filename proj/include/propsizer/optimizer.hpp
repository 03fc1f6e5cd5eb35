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


// The twelve-step analytical sizing pipeline and its product selection.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "propsizer/core_models.hpp"
#include "propsizer/evaluator.hpp"
#include "propsizer/product_db.hpp"
#include "propsizer/stat_models.hpp"

namespace propsizer {

struct OptimalParams {
  int blade_count = 2;        // B_pOpt
  double pitch_angle = 0.0;   // phi_pOpt
  double diameter_m = 0.0;    // D_pOpt
  double pitch_m = 0.0;       // H_pOpt
  double motor_max_voltage_v = 0.0;  // U_mMaxOpt
  double motor_max_current_a = 0.0;  // I_mMaxOpt
  double kv = 0.0;                   // K_VOpt
  double motor_resistance_ohm = 0.0;
  double motor_no_load_current_a = 0.0;
  double esc_max_voltage_v = 0.0;
  double esc_max_current_a = 0.0;
  double esc_resistance_ohm = 0.0;
  double battery_voltage_v = 0.0;  // U_bOpt
  double battery_capacity_mah = 0.0;  // C_bOpt
  double battery_rate_c = 0.0;        // K_bOpt
  double battery_resistance_ohm = 0.0;
  double max_thrust_n = 0.0;  // T_pMax, equal to T_max before rounding
  double k_tm = 0.0;
  double hover_battery_current_a = 0.0;  // I_b0 used for C_bOpt
};

struct TraceValue {
  std::string name;
  double value = 0.0;
  std::string unit;
};

struct TraceEntry {
  std::string step;
  std::vector<TraceValue> inputs;
  std::vector<TraceValue> outputs;
  std::string selected;  // product identifier for selection steps
  std::string note;
};

struct DesignResult {
  DesignRequirements requirements;
  std::optional<OptimalParams> optimal;  // absent for exhaustive search
  PropellerProduct propeller;
  MotorProduct motor;
  EscProduct esc;
  BatteryPack battery;
  PerformanceReport performance;
  std::vector<TraceEntry> trace;

  PropulsionSystem system(const BladeCoeffs& coeffs = {}) const;
};

struct OptimizerOptions {
  BladeCoeffs coeffs;
  // Fall back to the catalog mean pitch angle when fewer propellers than
  // this lie within the pitch band of the optimum.
  int min_props_in_band = 3;
  PackLimits pack_limits;
};

struct OptimizeStats {
  int hover_evaluations = 0;
  int full_throttle_evaluations = 0;
};

// Building blocks, exposed for testing.
struct PropellerOptimum {
  int blade_count = 2;
  double pitch_angle = 0.0;
  bool used_catalog_mean = false;
};
PropellerOptimum step1_propeller_efficiency(
    const BladeCoeffs& coeffs, const std::vector<PropellerProduct>* props = nullptr,
    int min_props_in_band = 3);

struct MotorOptimum {
  double max_voltage_v = 0.0;
  double max_current_a = 0.0;
  double kv = 0.0;
  double k_tm = 0.0;
};
MotorOptimum step2_motor_weight(double max_thrust_n, double density,
                                int blade_count, double pitch_angle,
                                const StatModels& stat,
                                const BladeCoeffs& coeffs = {});
// Same, at a given tier voltage.
MotorOptimum motor_optimum_at_voltage(double max_thrust_n, double voltage_v,
                                      double density, int blade_count,
                                      double pitch_angle, const StatModels& stat,
                                      const BladeCoeffs& coeffs = {});

struct DiameterOptimum {
  double diameter_m = 0.0;
  double pitch_m = 0.0;
};
DiameterOptimum step5_optimal_diameter(const MotorParams& motor,
                                       int blade_count, double pitch_angle,
                                       double density,
                                       const BladeCoeffs& coeffs = {});

EscTarget step7_esc_params(double motor_max_voltage_v, double motor_max_current_a);

struct BatteryOptimum {
  double voltage_v = 0.0;
  double capacity_mah = 0.0;
  double rate_c = 0.0;
  double hover_battery_current_a = 0.0;
};
// I_b0 comes from a hover evaluation of the selected propeller, motor and
// ESC on an ideal battery at U_bOpt.
BatteryOptimum step11_battery_params(const PropellerParams& prop,
                                     const MotorParams& motor,
                                     const EscParams& esc, double motor_max_voltage_v,
                                     double motor_max_current_a,
                                     const DesignRequirements& req,
                                     const BladeCoeffs& coeffs = {});

// Throws Error(kDesignInfeasible) naming the failing step and constraint.
DesignResult optimize(const DesignRequirements& req, const Catalog& catalog,
                      const StatModels& stat, const OptimizerOptions& options = {},
                      OptimizeStats* stats = nullptr);

}  // namespace propsizer
