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


#include "propsizer/core_models.hpp"

#include <cmath>

#include "str_util.hpp"

namespace propsizer {
namespace {

using internal::str_cat;
using units::kPi;

[[noreturn]] void domain_error(const std::string& what) {
  throw Error(ErrorCode::kDomain, what);
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    domain_error(str_cat(name, " must be positive and finite, got ", v));
  }
}

void require_nonnegative(double v, const char* name) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    domain_error(str_cat(name, " must be nonnegative and finite, got ", v));
  }
}

void invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidInput, what);
}

double checked_efficiency(double eta, const char* stage) {
  if (!std::isfinite(eta) || eta < 0.0 || eta > 1.0) {
    throw Error(ErrorCode::kModelInconsistent,
                str_cat(stage, " efficiency outside [0,1]: ", eta));
  }
  return eta;
}

}  // namespace

void BladeCoeffs::validate() const {
  require_positive(k_t0, "k_t0");
  require_positive(k_m0, "k_m0");
  require_positive(k_m1, "k_m1");
  require_positive(k_m2, "k_m2");
}

double Environment::air_density() const {
  return propsizer::air_density(altitude_m, temperature_c);
}

DesignRequirements DesignRequirements::from_total_weight(
    double total_weight_n, int rotor_count, double thrust_ratio,
    double endurance_min, double altitude_m) {
  if (rotor_count < 1) invalid("rotor_count must be >= 1");
  DesignRequirements req = from_hover_thrust(
      total_weight_n / rotor_count, rotor_count, thrust_ratio, endurance_min,
      altitude_m);
  req.total_weight_n = total_weight_n;
  return req;
}

DesignRequirements DesignRequirements::from_hover_thrust(
    double hover_thrust_n, int rotor_count, double thrust_ratio,
    double endurance_min, double altitude_m) {
  DesignRequirements req;
  req.rotor_count = rotor_count;
  req.hover_thrust_n = hover_thrust_n;
  req.thrust_ratio = thrust_ratio;
  req.max_thrust_n = hover_thrust_n / thrust_ratio;
  req.endurance_min = endurance_min;
  req.altitude_m = altitude_m;
  return req;
}

void DesignRequirements::validate() const {
  if (rotor_count < 1) invalid(str_cat("rotor_count must be >= 1, got ", rotor_count));
  if (!(thrust_ratio > 0.0 && thrust_ratio < 1.0)) {
    invalid(str_cat("thrust_ratio must be in (0,1), got ", thrust_ratio));
  }
  if (!(hover_thrust_n > 0.0) || !std::isfinite(hover_thrust_n)) {
    invalid(str_cat("hover_thrust_n must be positive, got ", hover_thrust_n));
  }
  const double expected_max = hover_thrust_n / thrust_ratio;
  if (!(std::abs(max_thrust_n - expected_max) <= 1e-9 * expected_max)) {
    invalid(str_cat("max_thrust_n must equal hover_thrust_n / thrust_ratio (",
                    expected_max, "), got ", max_thrust_n));
  }
  if (total_weight_n.has_value() &&
      !(std::abs(*total_weight_n - hover_thrust_n * rotor_count) <=
        1e-9 * *total_weight_n)) {
    invalid("total_weight_n must equal rotor_count * hover_thrust_n");
  }
  if (!(endurance_min > 0.0) || !std::isfinite(endurance_min)) {
    invalid(str_cat("endurance_min must be positive, got ", endurance_min));
  }
  if (!(other_current_a >= 0.0)) {
    invalid(str_cat("other_current_a must be >= 0, got ", other_current_a));
  }
  if (!(altitude_m >= 0.0 && altitude_m <= 10000.0)) {
    invalid(str_cat("altitude_m must be in [0, 10000], got ", altitude_m));
  }
  if (!(temperature_c >= -40.0 && temperature_c <= 60.0)) {
    invalid(str_cat("temperature_c must be in [-40, 60], got ", temperature_c));
  }
}

double PropellerParams::pitch_angle() const {
  return std::atan(pitch_m / (kPi * diameter_m));
}

void PropellerParams::validate() const {
  require_positive(diameter_m, "diameter_m");
  require_positive(pitch_m, "pitch_m");
  if (blade_count < 2) {
    domain_error(str_cat("blade_count must be >= 2, got ", blade_count));
  }
  if (weight_n) require_nonnegative(*weight_n, "weight_n");
}

void MotorParams::validate() const {
  require_positive(max_voltage_v, "max_voltage_v");
  require_positive(kv, "kv");
  require_nonnegative(no_load_current_a, "no_load_current_a");
  require_nonnegative(resistance_ohm, "resistance_ohm");
  require_positive(no_load_voltage_v, "no_load_voltage_v");
  if (!(max_current_a > no_load_current_a)) {
    domain_error(str_cat("max_current_a (", max_current_a,
                         ") must exceed no_load_current_a (", no_load_current_a,
                         ")"));
  }
  if (!(no_load_voltage_v > no_load_current_a * resistance_ohm)) {
    domain_error("no_load_voltage_v must exceed no_load_current_a * resistance_ohm");
  }
  if (weight_n) require_nonnegative(*weight_n, "weight_n");
  if (max_thrust_n) require_positive(*max_thrust_n, "max_thrust_n");
}

void EscParams::validate() const {
  require_positive(max_voltage_v, "max_voltage_v");
  require_positive(max_current_a, "max_current_a");
  require_nonnegative(resistance_ohm, "resistance_ohm");
  if (weight_n) require_nonnegative(*weight_n, "weight_n");
}

void BatteryParams::validate() const {
  require_positive(voltage_v, "voltage_v");
  require_positive(capacity_mah, "capacity_mah");
  require_positive(max_discharge_rate_c, "max_discharge_rate_c");
  require_nonnegative(resistance_ohm, "resistance_ohm");
  require_positive(energy_density_wh_per_kg, "energy_density_wh_per_kg");
  if (weight_n) require_nonnegative(*weight_n, "weight_n");
}

double air_density(double altitude_m, double temperature_c) {
  if (!(altitude_m >= 0.0 && altitude_m <= 10000.0)) {
    domain_error(str_cat("altitude_m must be in [0, 10000], got ", altitude_m));
  }
  if (!(temperature_c >= -40.0 && temperature_c <= 60.0)) {
    domain_error(str_cat("temperature_c must be in [-40, 60], got ", temperature_c));
  }
  const double kelvin = 273.0 + temperature_c;
  return 273.0 / kelvin *
         std::pow(1.0 - 0.0065 * altitude_m / kelvin, 5.2561) *
         units::kStandardDensity;
}

AeroCoeffs aero_coeffs(int blade_count, double pitch_angle,
                       const BladeCoeffs& coeffs) {
  if (blade_count < 2) {
    domain_error(str_cat("blade_count must be >= 2, got ", blade_count));
  }
  if (!(pitch_angle > 0.0 && pitch_angle < kPi / 2)) {
    domain_error(str_cat("pitch angle must be in (0, pi/2), got ", pitch_angle));
  }
  const double b = blade_count;
  AeroCoeffs out;
  out.c_t = coeffs.k_t0 * b * pitch_angle;
  out.c_m = coeffs.k_m0 * b * b *
            (coeffs.k_m1 + coeffs.k_m2 * pitch_angle * pitch_angle);
  return out;
}

ThrustTorque prop_thrust_torque(double speed_rpm, double diameter_m,
                                double c_t, double c_m, double density) {
  require_nonnegative(speed_rpm, "speed_rpm");
  require_positive(diameter_m, "diameter_m");
  const double n2 = (speed_rpm / 60.0) * (speed_rpm / 60.0);
  const double d4 = std::pow(diameter_m, 4);
  return {c_t * density * n2 * d4, c_m * density * n2 * d4 * diameter_m};
}

double prop_speed_for_thrust(double thrust_n, double diameter_m, double c_t,
                             double density) {
  require_nonnegative(thrust_n, "thrust_n");
  require_positive(diameter_m, "diameter_m");
  require_positive(c_t, "c_t");
  require_positive(density, "density");
  return 60.0 * std::sqrt(thrust_n / (c_t * density * std::pow(diameter_m, 4)));
}

double eta_tm(int blade_count, double pitch_angle, const BladeCoeffs& coeffs) {
  if (blade_count < 2) {
    domain_error(str_cat("blade_count must be >= 2, got ", blade_count));
  }
  if (!(pitch_angle > 0.0)) {
    domain_error(str_cat("pitch angle must be positive, got ", pitch_angle));
  }
  return coeffs.k_t0 * pitch_angle /
         (coeffs.k_m0 * blade_count *
          (coeffs.k_m1 + coeffs.k_m2 * pitch_angle * pitch_angle));
}

MotorState motor_im_um(double torque_nm, double speed_rpm,
                       const MotorParams& m) {
  require_nonnegative(torque_nm, "torque_nm");
  require_nonnegative(speed_rpm, "speed_rpm");
  const double back = m.no_load_voltage_v - m.no_load_current_a * m.resistance_ohm;
  if (!(back > 0.0) || !(m.kv > 0.0)) {
    domain_error("motor equivalent-circuit denominator is not positive");
  }
  MotorState out;
  out.current_a = kPi * torque_nm * m.kv * m.no_load_voltage_v / (30.0 * back) +
                  m.no_load_current_a;
  out.voltage_v = out.current_a * m.resistance_ohm +
                  back * speed_rpm / (m.kv * m.no_load_voltage_v);
  return out;
}

MotorLimits motor_limits(const MotorParams& m) {
  const double back = m.no_load_voltage_v - m.no_load_current_a * m.resistance_ohm;
  if (!(back > 0.0) || !(m.kv > 0.0)) {
    domain_error("motor equivalent-circuit denominator is not positive");
  }
  if (!(m.max_voltage_v > m.resistance_ohm * m.max_current_a)) {
    throw Error(ErrorCode::kMotorInfeasible,
                str_cat("U_mMax (", m.max_voltage_v,
                        " V) does not exceed R_m * I_mMax (",
                        m.resistance_ohm * m.max_current_a, " V)"));
  }
  if (m.max_current_a < m.no_load_current_a) {
    domain_error("max_current_a below no_load_current_a");
  }
  MotorLimits out;
  out.max_speed_rpm = (m.max_voltage_v - m.resistance_ohm * m.max_current_a) *
                      m.kv * m.no_load_voltage_v / back;
  out.max_torque_nm = 30.0 * (m.max_current_a - m.no_load_current_a) * back /
                      (kPi * m.kv * m.no_load_voltage_v);
  return out;
}

double motor_theoretical_max_thrust(const MotorParams& motor, double c_t,
                                    double c_m, double density) {
  const MotorLimits lim = motor_limits(motor);
  return (c_t / c_m) * std::pow(lim.max_torque_nm, 0.8) *
         std::pow(density, 0.2) * std::pow(c_m, 0.2) *
         std::pow(lim.max_speed_rpm, 0.4) / std::pow(60.0, 0.4);
}

double thrust_speed_constant(double c_t, double c_m, double density,
                             double k_c) {
  require_positive(c_t, "c_t");
  require_positive(c_m, "c_m");
  require_positive(density, "density");
  require_positive(k_c, "k_c");
  return std::pow(k_c * 255.0 * density * std::pow(c_t, 5) /
                      (std::pow(kPi, 4) * std::pow(c_m, 4)),
                  0.2);
}

double corrected_max_thrust(const MotorParams& motor, double k_tm) {
  require_positive(motor.kv, "kv");
  return k_tm * std::pow(motor.max_current_a * motor.max_current_a *
                             motor.max_voltage_v / motor.kv,
                         0.4);
}

double motor_efficiency(double motor_voltage_v, double motor_current_a,
                        double resistance_ohm, double no_load_current_a) {
  require_positive(motor_voltage_v, "motor_voltage_v");
  require_positive(motor_current_a, "motor_current_a");
  return checked_efficiency(
      (1.0 - motor_current_a * resistance_ohm / motor_voltage_v) *
          (1.0 - no_load_current_a / motor_current_a),
      "motor");
}

double esc_efficiency(double motor_voltage_v, double motor_current_a,
                      double esc_resistance_ohm) {
  require_positive(motor_voltage_v, "motor_voltage_v");
  return checked_efficiency(
      1.0 / (1.0 + motor_current_a * esc_resistance_ohm / motor_voltage_v),
      "esc");
}

double battery_efficiency(double battery_voltage_v, double battery_current_a,
                          double battery_resistance_ohm,
                          double other_current_a) {
  require_positive(battery_voltage_v, "battery_voltage_v");
  require_positive(battery_current_a, "battery_current_a");
  return checked_efficiency(
      (1.0 - battery_current_a * battery_resistance_ohm / battery_voltage_v) *
          (1.0 - other_current_a / battery_current_a),
      "battery");
}

EscState esc_solve(double motor_voltage_v, double motor_current_a,
                   double esc_voltage_v, double esc_resistance_ohm) {
  require_positive(esc_voltage_v, "esc_voltage_v");
  const double sigma =
      (motor_voltage_v + motor_current_a * esc_resistance_ohm) / esc_voltage_v;
  if (sigma < 0.0) domain_error(str_cat("negative throttle ", sigma));
  if (sigma > 1.0) {
    throw Error(ErrorCode::kThrottleInfeasible,
                str_cat("required throttle ", sigma, " exceeds full throttle"));
  }
  return {sigma, sigma * motor_current_a};
}

BatteryState battery_chain(double esc_current_a, int rotor_count,
                           double other_current_a, double battery_voltage_v,
                           double battery_resistance_ohm) {
  require_nonnegative(esc_current_a, "esc_current_a");
  require_nonnegative(other_current_a, "other_current_a");
  require_nonnegative(battery_voltage_v, "battery_voltage_v");
  require_nonnegative(battery_resistance_ohm, "battery_resistance_ohm");
  if (rotor_count < 1) domain_error("rotor_count must be >= 1");
  BatteryState out;
  out.current_a = rotor_count * esc_current_a + other_current_a;
  out.esc_voltage_v = battery_voltage_v - out.current_a * battery_resistance_ohm;
  if (!(out.esc_voltage_v > 0.0)) {
    throw Error(ErrorCode::kBrownout,
                str_cat("ESC input voltage collapsed to ", out.esc_voltage_v,
                        " V at battery current ", out.current_a, " A"));
  }
  return out;
}

double discharge_time(double capacity_mah, double battery_current_a) {
  require_nonnegative(capacity_mah, "capacity_mah");
  require_nonnegative(battery_current_a, "battery_current_a");
  if (battery_current_a == 0.0) {
    throw Error(ErrorCode::kInfiniteEndurance,
                "zero battery current: endurance is unbounded");
  }
  return kReserveFraction * capacity_mah / battery_current_a * 60.0 / 1000.0;
}

double capacity_for_endurance(double endurance_min, double battery_current_a) {
  require_nonnegative(endurance_min, "endurance_min");
  require_nonnegative(battery_current_a, "battery_current_a");
  return endurance_min * battery_current_a * 1000.0 /
         (kReserveFraction * 60.0);
}

double battery_weight(double capacity_mah, double voltage_v,
                      double energy_density_wh_per_kg, double gravity) {
  require_nonnegative(capacity_mah, "capacity_mah");
  require_nonnegative(voltage_v, "voltage_v");
  require_positive(energy_density_wh_per_kg, "energy_density_wh_per_kg");
  require_positive(gravity, "gravity");
  return gravity * capacity_mah * voltage_v / (1000.0 * energy_density_wh_per_kg);
}

ResistanceEstimate correct_motor_resistance(
    double battery_voltage_v, double kv, double full_throttle_current_a,
    double full_throttle_speed_rpm,
    std::optional<double> nominal_resistance_ohm) {
  require_positive(full_throttle_current_a, "full_throttle_current_a");
  require_positive(kv, "kv");
  ResistanceEstimate out;
  out.resistance_ohm =
      (battery_voltage_v - full_throttle_speed_rpm / kv) / full_throttle_current_a;
  if (out.resistance_ohm < 0.0) {
    throw Error(ErrorCode::kModelInconsistent,
                str_cat("test data implies negative resistance ",
                        out.resistance_ohm, " ohm"));
  }
  if (nominal_resistance_ohm && *nominal_resistance_ohm > 0.0) {
    const double ratio = out.resistance_ohm / *nominal_resistance_ohm;
    out.outside_expected_band = ratio < 1.5 || ratio > 4.0;
  }
  return out;
}

}  // namespace propsizer
