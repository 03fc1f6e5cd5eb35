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


// Catalog statistics: the power-to-thrust constant, the voltage tier table
// and component weight surfaces.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace propsizer {

inline constexpr double kDefaultPowerThrust = 0.0624;  // N/W
inline constexpr double kDefaultCorrection = 0.82;     // k_c

struct PowerThrustModel {
  double g_wconst = kDefaultPowerThrust;
  double rms_residual_n = 0.0;
  std::size_t record_count = 0;
};

struct VoltageTier {
  double max_thrust_n = 0.0;  // upper thrust bound of this tier
  double voltage_v = 0.0;
};

struct VoltageTierModel {
  std::vector<VoltageTier> tiers;

  // Smallest tier voltage admitting `thrust_n`. Tiers are left-inclusive:
  // thrust exactly at a breakpoint maps to that tier. Throws
  // kOutOfCatalogRange above the last breakpoint.
  double lookup(double thrust_n) const;
  // Index of the tier lookup() would pick.
  std::size_t tier_index(double thrust_n) const;
  void validate() const;
};

// G = exp(log_a) * x^b * y^c with b, c >= 0.
struct PowerLaw {
  double log_a = 0.0;
  double exp_x = 0.0;
  double exp_y = 0.0;

  double predict(double x, double y) const;
};

struct WeightModels {
  std::optional<PowerLaw> propeller;  // (B_p, D_p [m])
  std::optional<PowerLaw> motor;      // (U_mMax [V], T_pMax [N])
  std::optional<PowerLaw> esc;        // (U_eMax [V], I_eMax [A])
  double k_c = kDefaultCorrection;

  // Throw kFit when the corresponding surface was not fitted.
  double predict_prop_weight(int blade_count, double diameter_m) const;
  double predict_motor_weight(double max_voltage_v, double max_thrust_n) const;
  double predict_esc_weight(double max_voltage_v, double max_current_a) const;
};

struct Provenance {
  std::string catalog_hash;
  std::string fit_date;
};

struct StatModels {
  PowerThrustModel power_thrust;
  VoltageTierModel voltage_tiers;
  WeightModels weight_models;
  Provenance provenance;
};

struct PowerThrustPoint {
  double power_w = 0.0;  // U_mMax * I_mMax
  double max_thrust_n = 0.0;
};

struct VoltageThrustPoint {
  double max_voltage_v = 0.0;
  double max_thrust_n = 0.0;
};

struct WeightSample {
  double x = 0.0;
  double y = 0.0;
  double weight_n = 0.0;
};

// Least-squares slope through the origin. Needs >= 3 positive records.
PowerThrustModel fit_power_thrust(const std::vector<PowerThrustPoint>& points);

// One breakpoint per voltage class at that class's largest thrust. A class
// whose breakpoint does not exceed the one below it is merged upward.
VoltageTierModel fit_voltage_tiers(const std::vector<VoltageThrustPoint>& points);

// log G = log a + b log x + c log y, solved exactly under b, c >= 0 by
// enumerating active sets. Needs >= 5 positive samples. A regressor that is
// constant across the samples gets exponent 0. Collinear regressors throw
// kFit.
PowerLaw fit_power_law(const std::vector<WeightSample>& samples);

}  // namespace propsizer
