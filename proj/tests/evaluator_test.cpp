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


#include "propsizer/evaluator.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "test_support.hpp"

namespace propsizer {
namespace {

using testing::bundled_catalog;
using testing::reference_system;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kDomain;
}

bool has_violation(const std::vector<Violation>& v, const std::string& name) {
  for (const Violation& x : v) {
    if (x.constraint == name) return true;
  }
  return false;
}

// U11 + 29x9.5CF on a stiff 48 V supply, as on a thrust stand.
PropulsionSystem bench(const std::string& prop_id) {
  PropulsionSystem s = reference_system();
  s.propeller = testing::find_propeller(bundled_catalog(), prop_id).params;
  s.battery.resistance_ohm = 0.0;
  s.rotor_count = 1;
  s.other_current_a = 0.0;
  s.environment = {0.0, 0.0};
  return s;
}

TEST(HoverPointTest, DecoupledCaseConvergesImmediately) {
  PropulsionSystem s = reference_system();
  s.battery.resistance_ohm = 0.0;
  s.esc.resistance_ohm = 0.0;
  const HoverSolution h = hover_point(s, 49.0);
  EXPECT_EQ(h.iterations, 1);
  EXPECT_DOUBLE_EQ(h.point.throttle, h.point.motor_voltage_v / s.battery.voltage_v);
  EXPECT_EQ(h.point.esc_voltage_v, s.battery.voltage_v);
}

TEST(HoverPointTest, ReferenceBatteryCurrent) {
  const HoverSolution h = hover_point(reference_system(), 49.0);
  // 16000 mAh * 0.85 / (17 min) = 48 A.
  EXPECT_NEAR(h.battery_current_a, 48.0, 0.2 * 48.0);
  EXPECT_LT(h.point.throttle, 1.0);
  EXPECT_GT(h.point.throttle, 0.0);
  EXPECT_NEAR(h.point.thrust_n, 49.0, 1e-9);
}

TEST(HoverPointTest, MatchesBisectionOracleSpeed) {
  const HoverSolution h = hover_point(reference_system(), 49.0);
  EXPECT_NEAR(h.point.speed_rpm, 2635.878351681267, 1e-8);
}

TEST(HoverPointTest, BatteryCurrentIncreasesWithThrust) {
  const PropulsionSystem s = reference_system();
  double prev = 0.0;
  for (double t = 5.0; t <= 75.0; t += 5.0) {
    const double i = hover_point(s, t).battery_current_a;
    EXPECT_GT(i, prev) << t;
    prev = i;
  }
}

TEST(HoverPointTest, Errors) {
  const PropulsionSystem s = reference_system();
  EXPECT_EQ(code_of([&] { hover_point(s, 0.0); }), ErrorCode::kDomain);
  EXPECT_EQ(code_of([&] { hover_point(s, 150.0); }), ErrorCode::kThrottleInfeasible);
  PropulsionSystem sag = s;
  sag.battery.resistance_ohm = 2.0;
  EXPECT_EQ(code_of([&] { hover_point(sag, 49.0); }), ErrorCode::kBrownout);
}

TEST(FullThrottleTest, U11TableRow) {
  const OperatingPoint p = full_throttle_point(bench("T-MOTOR 29x9.5CF 2-blade"));
  EXPECT_NEAR(p.thrust_n, 98.8, 0.2 * 98.8);
  EXPECT_NEAR(p.motor_current_a, 31.9, 0.2 * 31.9);
  EXPECT_NEAR(p.speed_rpm, 3602.0, 0.2 * 3602.0);
  EXPECT_NEAR(p.torque_nm, 3.41, 0.2 * 3.41);
  EXPECT_EQ(p.throttle, 1.0);
}

TEST(FullThrottleTest, IdealComponentsClosedForm) {
  PropulsionSystem s = bench("T-MOTOR 29x9.5CF 2-blade");
  s.motor.resistance_ohm = 0.0;
  s.motor.no_load_current_a = 0.0;
  s.esc.resistance_ohm = 0.0;
  const OperatingPoint p = full_throttle_point(s);
  // With no drops the motor runs at its unloaded speed U_b K_V.
  EXPECT_NEAR(p.speed_rpm, s.battery.voltage_v * s.motor.kv, 1e-6 * p.speed_rpm);
  EXPECT_NEAR(p.motor_voltage_v, s.battery.voltage_v, 1e-6);
}

TEST(FullThrottleTest, AtLeastHoverThrust) {
  const PropulsionSystem s = reference_system();
  EXPECT_GE(full_throttle_point(s).thrust_n, hover_point(s, 49.0).point.thrust_n);
}

TEST(EnduranceTest, ReferenceSystem) {
  EXPECT_NEAR(endurance(reference_system(), 49.0), 17.0, 0.2 * 17.0);
}

TEST(EnduranceTest, CapacityAndOtherCurrent) {
  PropulsionSystem s = reference_system();
  const double base = endurance(s, 49.0);
  s.battery.capacity_mah *= 2;
  EXPECT_NEAR(endurance(s, 49.0), 2 * base, 1e-12 * base);
  s = reference_system();
  s.other_current_a = 0.0;
  EXPECT_GT(endurance(s, 49.0), base);
}

TEST(CheckSafetyTest, ReferenceSystemIsSafe) {
  const std::vector<Violation> v = check_safety(reference_system(), 98.0);
  EXPECT_TRUE(v.empty()) << v.front().constraint;
}

TEST(CheckSafetyTest, ThirtyInchPropellerOverloadsTheMotor) {
  PropulsionSystem s = reference_system();
  s.propeller = testing::find_propeller(bundled_catalog(), "T-MOTOR 30x10.5CF 2-blade").params;
  EXPECT_TRUE(has_violation(check_safety(s, 98.0), "full_throttle_motor_current"));
}

TEST(CheckSafetyTest, DischargeBoundaryInclusive) {
  PropulsionSystem s = reference_system();
  const double need = s.rotor_count * s.motor.max_current_a + s.other_current_a;
  s.battery.max_discharge_rate_c = need * 1000.0 / s.battery.capacity_mah;
  EXPECT_FALSE(has_violation(check_safety(s, 98.0), "battery_discharge_current"));
  s.battery.max_discharge_rate_c *= 0.99;
  EXPECT_TRUE(has_violation(check_safety(s, 98.0), "battery_discharge_current"));
}

TEST(CheckSafetyTest, EachInequality) {
  PropulsionSystem s = reference_system();
  s.battery.voltage_v = 52.0;
  const std::vector<Violation> v = check_safety(s, 98.0);
  EXPECT_TRUE(has_violation(v, "battery_voltage_vs_motor"));
  EXPECT_TRUE(has_violation(v, "battery_voltage_vs_esc"));
  s = reference_system();
  s.esc.max_current_a = 30.0;
  EXPECT_TRUE(has_violation(check_safety(s, 98.0), "motor_current_vs_esc"));
  EXPECT_TRUE(has_violation(check_safety(reference_system(), 130.0), "max_thrust"));
}

TEST(SystemWeightTest, Cases) {
  PropulsionSystem s = reference_system();
  const Catalog& c = bundled_catalog();
  const double per_rotor =
      testing::find_propeller(c, "T-MOTOR 29x9.5CF 2-blade").weight_n() +
      testing::find_motor(c, "T-MOTOR U11 KV90").weight_n() +
      testing::find_esc(c, "T-MOTOR FLAME 60A HV").weight_n();
  const double pack = 2 * testing::find_battery(c, "TATTU 6S 15C 16000mAh").weight_n();
  EXPECT_NEAR(system_weight(s), 4 * per_rotor + pack, 1e-12);
  s.rotor_count = 8;
  EXPECT_NEAR(system_weight(s), 8 * per_rotor + pack, 1e-12);

  s.propeller.weight_n = 0.0;
  s.motor.weight_n = 0.0;
  s.esc.weight_n = 0.0;
  s.battery.weight_n = 0.0;
  EXPECT_EQ(system_weight(s), 0.0);
}

TEST(SystemWeightTest, PredictedWeights) {
  PropulsionSystem s = reference_system();
  s.motor.weight_n.reset();
  EXPECT_THROW(system_weight(s), Error);
  const WeightModels& w = testing::bundled_models().weight_models;
  EXPECT_GT(system_weight(s, &w), 0.0);
  s.battery.weight_n.reset();
  const double with_energy = system_weight(s, &w);
  s.battery.weight_n = battery_weight(s.battery.capacity_mah, s.battery.voltage_v,
                                      s.battery.energy_density_wh_per_kg);
  EXPECT_DOUBLE_EQ(system_weight(s, &w), with_energy);
}

TEST(EvaluateTest, ReferenceReport) {
  const PerformanceReport r =
      evaluate(reference_system(), 49.0, 98.0, &testing::bundled_models().weight_models);
  EXPECT_TRUE(r.hover_feasible);
  EXPECT_TRUE(r.safe);
  EXPECT_TRUE(r.violations.empty());
  for (double eta : {r.eta_motor, r.eta_esc, r.eta_battery}) {
    EXPECT_GT(eta, 0.0);
    EXPECT_LE(eta, 1.0);
  }
  EXPECT_NEAR(r.eta_tm, eta_tm(2, reference_system().propeller.pitch_angle(), BladeCoeffs{}), 1e-15);
  EXPECT_GT(r.full_throttle_thrust_n, 98.0 * 0.8);
  ASSERT_TRUE(r.system_weight_n.has_value());
}

TEST(EvaluateTest, InfeasibleHoverIsReportedNotThrown) {
  const PerformanceReport r = evaluate(reference_system(), 150.0, 300.0);
  EXPECT_FALSE(r.hover_feasible);
  EXPECT_FALSE(r.safe);
  EXPECT_TRUE(has_violation(r.violations, "hover"));
}

}  // namespace
}  // namespace propsizer
