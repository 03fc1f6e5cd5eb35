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

// Steady-state models of the four propulsion components (propeller, motor,
// ESC, battery) and of the atmosphere. All functions are pure.

#pragma once

#include <optional>

#include "propsizer/error.hpp"
#include "propsizer/units.hpp"

namespace propsizer {

inline constexpr double kDefaultNoLoadVoltage = 10.0;     // U_m0, volts
inline constexpr double kDefaultOtherCurrent = 0.5;       // I_other, amperes
inline constexpr double kDefaultEnergyDensity = 140.0;    // rho_b, Wh/kg
inline constexpr double kDefaultTemperature = 0.0;        // T_t, degC
inline constexpr double kDefaultThrustRatio = 0.5;        // gamma
inline constexpr double kReserveFraction = 0.85;          // usable capacity

// Fit constants of the blade-element thrust/torque coefficients. Defaults are
// for carbon-fiber propellers.
struct BladeCoeffs {
  double k_t0 = 0.323;
  double k_m0 = 0.0432;
  double k_m1 = 0.01;
  double k_m2 = 0.9;

  void validate() const;
};

struct Environment {
  double altitude_m = 0.0;
  double temperature_c = kDefaultTemperature;

  double air_density() const;
};

struct DesignRequirements {
  int rotor_count = 0;
  std::optional<double> total_weight_n;
  double hover_thrust_n = 0.0;  // per propeller
  double thrust_ratio = kDefaultThrustRatio;
  double max_thrust_n = 0.0;  // per propeller
  double altitude_m = 0.0;
  double temperature_c = kDefaultTemperature;
  double endurance_min = 0.0;
  double other_current_a = kDefaultOtherCurrent;

  // T_hover = G_total / n_p, T_max = T_hover / gamma.
  static DesignRequirements from_total_weight(double total_weight_n,
                                              int rotor_count,
                                              double thrust_ratio,
                                              double endurance_min,
                                              double altitude_m);
  static DesignRequirements from_hover_thrust(double hover_thrust_n,
                                              int rotor_count,
                                              double thrust_ratio,
                                              double endurance_min,
                                              double altitude_m);

  Environment environment() const { return {altitude_m, temperature_c}; }
  // Throws kInvalidInput.
  void validate() const;
};

struct PropellerParams {
  double diameter_m = 0.0;
  double pitch_m = 0.0;
  int blade_count = 2;
  std::optional<double> weight_n;

  // phi_p = atan(H_p / (pi D_p)).
  double pitch_angle() const;
  void validate() const;
};

struct MotorParams {
  double max_voltage_v = 0.0;  // U_mMax
  double max_current_a = 0.0;  // I_mMax
  double kv = 0.0;             // RPM/V
  double no_load_current_a = 0.0;
  double no_load_voltage_v = kDefaultNoLoadVoltage;
  double resistance_ohm = 0.0;
  std::optional<double> weight_n;
  // Vendor-measured maximum thrust, used only for catalog statistics.
  std::optional<double> max_thrust_n;

  void validate() const;
};

struct EscParams {
  double max_voltage_v = 0.0;
  double max_current_a = 0.0;
  double resistance_ohm = 0.0;
  std::optional<double> weight_n;

  void validate() const;
};

struct BatteryParams {
  double voltage_v = 0.0;
  double capacity_mah = 0.0;
  double max_discharge_rate_c = 0.0;  // K_b
  double resistance_ohm = 0.0;
  double energy_density_wh_per_kg = kDefaultEnergyDensity;
  std::optional<double> weight_n;

  int cells() const { return units::volts_to_cells(voltage_v).cells; }
  // I_bMax = K_b C_b / 1000.
  double max_discharge_current_a() const {
    return max_discharge_rate_c * capacity_mah / 1000.0;
  }
  void validate() const;
};

struct OperatingPoint {
  double speed_rpm = 0.0;
  double torque_nm = 0.0;
  double thrust_n = 0.0;
  double motor_voltage_v = 0.0;
  double motor_current_a = 0.0;
  double throttle = 0.0;
  double esc_voltage_v = 0.0;
  double esc_current_a = 0.0;
  double battery_current_a = 0.0;
};

struct AeroCoeffs {
  double c_t = 0.0;
  double c_m = 0.0;
};

struct ThrustTorque {
  double thrust_n = 0.0;
  double torque_nm = 0.0;
};

struct MotorState {
  double current_a = 0.0;
  double voltage_v = 0.0;
};

struct MotorLimits {
  double max_speed_rpm = 0.0;
  double max_torque_nm = 0.0;
};

struct EscState {
  double throttle = 0.0;
  double current_a = 0.0;
};

struct BatteryState {
  double current_a = 0.0;
  double esc_voltage_v = 0.0;
};

struct ResistanceEstimate {
  double resistance_ohm = 0.0;
  // Set when a nominal resistance was given and the estimate is outside
  // [1.5, 4] times it.
  bool outside_expected_band = false;
};

// International standard atmosphere. h in [0, 10000] m, T in [-40, 60] degC.
double air_density(double altitude_m, double temperature_c);

AeroCoeffs aero_coeffs(int blade_count, double pitch_angle,
                       const BladeCoeffs& coeffs);

ThrustTorque prop_thrust_torque(double speed_rpm, double diameter_m,
                                double c_t, double c_m, double density);

double prop_speed_for_thrust(double thrust_n, double diameter_m, double c_t,
                             double density);

// Thrust-to-torque coefficient ratio C_T / C_M.
double eta_tm(int blade_count, double pitch_angle, const BladeCoeffs& coeffs);

MotorState motor_im_um(double torque_nm, double speed_rpm,
                       const MotorParams& motor);

// Throws kMotorInfeasible when U_mMax <= R_m I_mMax.
MotorLimits motor_limits(const MotorParams& motor);

// T_pMax of the simplified propeller model at the motor's (N_max, M_max).
double motor_theoretical_max_thrust(const MotorParams& motor, double c_t,
                                    double c_m, double density);

// k_tm = (k_c 255 rho C_T^5 / (pi^4 C_M^4))^(1/5).
double thrust_speed_constant(double c_t, double c_m, double density,
                             double k_c);

// k_c-corrected maximum thrust k_tm (I_mMax^2 U_mMax / K_V)^(2/5).
double corrected_max_thrust(const MotorParams& motor, double k_tm);

// Efficiencies throw kModelInconsistent when the value leaves [0, 1].
double motor_efficiency(double motor_voltage_v, double motor_current_a,
                        double resistance_ohm, double no_load_current_a);
double esc_efficiency(double motor_voltage_v, double motor_current_a,
                      double esc_resistance_ohm);
double battery_efficiency(double battery_voltage_v, double battery_current_a,
                          double battery_resistance_ohm,
                          double other_current_a);

// Throws kThrottleInfeasible when sigma > 1.
EscState esc_solve(double motor_voltage_v, double motor_current_a,
                   double esc_voltage_v, double esc_resistance_ohm);

// Throws kBrownout when U_e <= 0.
BatteryState battery_chain(double esc_current_a, int rotor_count,
                           double other_current_a, double battery_voltage_v,
                           double battery_resistance_ohm);

// Minutes until 15% of capacity remains. Zero current throws
// kInfiniteEndurance.
double discharge_time(double capacity_mah, double battery_current_a);

// Inverse of discharge_time.
double capacity_for_endurance(double endurance_min, double battery_current_a);

// Pack weight in newtons from stored energy and energy density.
double battery_weight(double capacity_mah, double voltage_v,
                      double energy_density_wh_per_kg,
                      double gravity = units::kGravity);

// Actual motor resistance from a full-throttle test point.
ResistanceEstimate correct_motor_resistance(
    double battery_voltage_v, double kv, double full_throttle_current_a,
    double full_throttle_speed_rpm,
    std::optional<double> nominal_resistance_ohm = std::nullopt);

}  // namespace propsizer
