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


#include "propsizer/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "str_util.hpp"

namespace propsizer {
namespace {

using internal::str_cat;
using units::kPi;

[[noreturn]] void step_failure(const std::string& step,
                               const std::string& constraint,
                               const std::string& what,
                               std::vector<Violation> violations = {}) {
  throw Error(ErrorCode::kDesignInfeasible, str_cat(step, ": ", what), step,
              constraint, std::move(violations));
}

// Runs `fn`, turning any library error into a structured step failure.
template <typename Fn>
auto at_step(const std::string& step, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kDesignInfeasible) throw;
    const std::string constraint =
        e.constraint().empty() ? std::string(to_string(e.code())) : e.constraint();
    step_failure(step, constraint, e.what(), e.violations());
  }
}

TraceValue v(std::string name, double value, std::string unit = "") {
  return {std::move(name), value, std::move(unit)};
}

}  // namespace

PropulsionSystem DesignResult::system(const BladeCoeffs& coeffs) const {
  PropulsionSystem s;
  s.propeller = propeller.params;
  s.motor = motor.params;
  s.esc = esc.params;
  s.battery = battery.params;
  s.rotor_count = requirements.rotor_count;
  s.environment = requirements.environment();
  s.other_current_a = requirements.other_current_a;
  s.coeffs = coeffs;
  return s;
}

PropellerOptimum step1_propeller_efficiency(
    const BladeCoeffs& coeffs, const std::vector<PropellerProduct>* props,
    int min_props_in_band) {
  coeffs.validate();
  PropellerOptimum out;
  // eta_T/M falls as 1/B_p, so the fewest practical blades win.
  out.blade_count = 2;
  out.pitch_angle = std::sqrt(coeffs.k_m1 / coeffs.k_m2);
  if (props == nullptr) return out;
  int in_band = 0;
  double sum = 0.0;
  int count = 0;
  for (const auto& p : *props) {
    if (p.params.blade_count != out.blade_count) continue;
    const double phi = p.params.pitch_angle();
    sum += phi;
    ++count;
    if (std::abs(phi - out.pitch_angle) <= kPitchBand * out.pitch_angle) ++in_band;
  }
  if (in_band >= min_props_in_band) return out;
  if (count == 0) {
    throw Error(ErrorCode::kSelectionInfeasible,
                "no propellers to take a mean pitch angle from",
                "step1_propeller_efficiency", "catalog");
  }
  out.pitch_angle = sum / count;
  out.used_catalog_mean = true;
  return out;
}

MotorOptimum motor_optimum_at_voltage(double max_thrust_n, double voltage_v,
                                      double density, int blade_count,
                                      double pitch_angle, const StatModels& stat,
                                      const BladeCoeffs& coeffs) {
  const AeroCoeffs ac = aero_coeffs(blade_count, pitch_angle, coeffs);
  MotorOptimum out;
  out.max_voltage_v = voltage_v;
  out.max_current_a = max_thrust_n / (stat.power_thrust.g_wconst * voltage_v);
  out.k_tm = thrust_speed_constant(ac.c_t, ac.c_m, density, stat.weight_models.k_c);
  out.kv = std::pow(out.k_tm, 2.5) * out.max_current_a * out.max_current_a *
           voltage_v / std::pow(max_thrust_n, 2.5);
  return out;
}

MotorOptimum step2_motor_weight(double max_thrust_n, double density,
                                int blade_count, double pitch_angle,
                                const StatModels& stat, const BladeCoeffs& coeffs) {
  return motor_optimum_at_voltage(max_thrust_n,
                                  stat.voltage_tiers.lookup(max_thrust_n), density,
                                  blade_count, pitch_angle, stat, coeffs);
}

DiameterOptimum step5_optimal_diameter(const MotorParams& motor,
                                       int blade_count, double pitch_angle,
                                       double density, const BladeCoeffs& coeffs) {
  const MotorLimits lim = motor_limits(motor);
  const AeroCoeffs ac = aero_coeffs(blade_count, pitch_angle, coeffs);
  DiameterOptimum out;
  out.diameter_m = std::pow(3600.0 * lim.max_torque_nm /
                                (density * ac.c_m * lim.max_speed_rpm * lim.max_speed_rpm),
                            0.2);
  out.pitch_m = kPi * out.diameter_m * std::tan(pitch_angle);
  return out;
}

EscTarget step7_esc_params(double motor_max_voltage_v, double motor_max_current_a) {
  return {motor_max_voltage_v, motor_max_current_a};
}

BatteryOptimum step11_battery_params(const PropellerParams& prop,
                                     const MotorParams& motor, const EscParams& esc,
                                     double motor_max_voltage_v,
                                     double motor_max_current_a,
                                     const DesignRequirements& req,
                                     const BladeCoeffs& coeffs) {
  PropulsionSystem s;
  s.propeller = prop;
  s.motor = motor;
  s.esc = esc;
  s.battery.voltage_v = motor_max_voltage_v;
  s.battery.capacity_mah = 1.0;
  s.battery.max_discharge_rate_c = 1.0;
  s.battery.resistance_ohm = 0.0;
  s.rotor_count = req.rotor_count;
  s.environment = req.environment();
  s.other_current_a = req.other_current_a;
  s.coeffs = coeffs;
  const HoverSolution h = hover_point(s, req.hover_thrust_n);
  BatteryOptimum out;
  out.voltage_v = motor_max_voltage_v;
  out.hover_battery_current_a = h.battery_current_a;
  out.capacity_mah = capacity_for_endurance(req.endurance_min, h.battery_current_a);
  out.rate_c = 1000.0 * (req.rotor_count * motor_max_current_a + req.other_current_a) /
               out.capacity_mah;
  return out;
}

DesignResult optimize(const DesignRequirements& req, const Catalog& catalog,
                      const StatModels& stat, const OptimizerOptions& options,
                      OptimizeStats* stats) {
  OptimizeStats local_stats;
  OptimizeStats& st = stats != nullptr ? *stats : local_stats;
  // Malformed input is not a design failure; let kInvalidInput through.
  req.validate();
  const BladeCoeffs& coeffs = options.coeffs;
  coeffs.validate();
  const double rho = at_step("requirements",
                             [&] { return air_density(req.altitude_m, req.temperature_c); });

  DesignResult result;
  result.requirements = req;
  OptimalParams opt;
  auto& trace = result.trace;
  {
    TraceEntry e{"requirements", {}, {}, "", ""};
    if (req.total_weight_n) e.inputs.push_back(v("total_weight", *req.total_weight_n, "N"));
    e.inputs.push_back(v("rotor_count", req.rotor_count));
    e.inputs.push_back(v("thrust_ratio", req.thrust_ratio));
    e.outputs = {v("hover_thrust", req.hover_thrust_n, "N"),
                 v("max_thrust", req.max_thrust_n, "N"),
                 v("air_density", rho, "kg/m^3")};
    e.note = req.total_weight_n ? "per-propeller thrust from total weight"
                                : "per-propeller thrust given directly";
    trace.push_back(std::move(e));
  }

  // Step 1: blade count and pitch angle.
  const PropellerOptimum p1 = at_step("step1_propeller_efficiency", [&] {
    return step1_propeller_efficiency(coeffs, &catalog.propellers,
                                      options.min_props_in_band);
  });
  opt.blade_count = p1.blade_count;
  opt.pitch_angle = p1.pitch_angle;
  trace.push_back({"step1_propeller_efficiency",
                   {v("k_m1", coeffs.k_m1), v("k_m2", coeffs.k_m2)},
                   {v("blade_count", p1.blade_count), v("pitch_angle", p1.pitch_angle, "rad"),
                    v("eta_tm", eta_tm(p1.blade_count, p1.pitch_angle, coeffs))},
                   "",
                   p1.used_catalog_mean ? "catalog mean pitch angle (too few products near optimum)"
                                        : ""});

  // Step 2: voltage tier, current and KV.
  opt.max_thrust_n = req.max_thrust_n;
  std::size_t tier = at_step("step2_motor_weight", [&] {
    return stat.voltage_tiers.tier_index(req.max_thrust_n);
  });
  MotorOptimum mo = at_step("step2_motor_weight", [&] {
    return motor_optimum_at_voltage(req.max_thrust_n, stat.voltage_tiers.tiers[tier].voltage_v,
                                    rho, opt.blade_count, opt.pitch_angle, stat, coeffs);
  });
  trace.push_back({"step2_motor_weight",
                   {v("max_thrust", req.max_thrust_n, "N"),
                    v("g_wconst", stat.power_thrust.g_wconst, "N/W"),
                    v("k_c", stat.weight_models.k_c)},
                   {v("max_voltage", mo.max_voltage_v, "V"), v("max_current", mo.max_current_a, "A"),
                    v("kv", mo.kv, "RPM/V"), v("k_tm", mo.k_tm)},
                   "",
                   ""});

  // Step 3: efficiency targets.
  trace.push_back({"step3_motor_efficiency", {}, {v("resistance", 0.0, "ohm"),
                                                  v("no_load_current", 0.0, "A")}, "", ""});

  // Step 4: motor selection, escalating the voltage tier if needed.
  const MotorProduct* motor = nullptr;
  while (motor == nullptr) {
    try {
      motor = &select_motor({mo.max_voltage_v, mo.max_current_a, mo.kv}, catalog.motors);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kSelectionInfeasible ||
          tier + 1 >= stat.voltage_tiers.tiers.size()) {
        step_failure("step4_motor_selection",
                     e.constraint().empty() ? "motor" : e.constraint(), e.what());
      }
      ++tier;
      mo = motor_optimum_at_voltage(req.max_thrust_n, stat.voltage_tiers.tiers[tier].voltage_v,
                                    rho, opt.blade_count, opt.pitch_angle, stat, coeffs);
      trace.push_back({"step4_tier_escalation",
                       {},
                       {v("max_voltage", mo.max_voltage_v, "V"),
                        v("max_current", mo.max_current_a, "A"), v("kv", mo.kv, "RPM/V")},
                       "",
                       str_cat("no motor in the lower tier: ", e.what())});
    }
  }
  opt.motor_max_voltage_v = mo.max_voltage_v;
  opt.motor_max_current_a = mo.max_current_a;
  opt.kv = mo.kv;
  opt.k_tm = mo.k_tm;
  result.motor = *motor;
  trace.push_back({"step4_motor_selection",
                   {v("max_voltage", mo.max_voltage_v, "V"), v("max_current", mo.max_current_a, "A"),
                    v("kv", mo.kv, "RPM/V")},
                   {v("max_voltage", motor->params.max_voltage_v, "V"),
                    v("max_current", motor->params.max_current_a, "A"),
                    v("kv", motor->params.kv, "RPM/V"),
                    v("resistance", motor->params.resistance_ohm, "ohm"),
                    v("no_load_current", motor->params.no_load_current_a, "A")},
                   motor->id,
                   ""});

  // Step 5: diameter from the selected motor's limits.
  const DiameterOptimum dia = at_step("step5_optimal_diameter", [&] {
    return step5_optimal_diameter(motor->params, opt.blade_count, opt.pitch_angle, rho, coeffs);
  });
  opt.diameter_m = dia.diameter_m;
  opt.pitch_m = dia.pitch_m;
  {
    const MotorLimits lim = motor_limits(motor->params);
    trace.push_back({"step5_optimal_diameter",
                     {v("max_speed", lim.max_speed_rpm, "RPM"),
                      v("max_torque", lim.max_torque_nm, "N*m")},
                     {v("diameter", dia.diameter_m, "m"), v("pitch", dia.pitch_m, "m")},
                     "",
                     ""});
  }

  // Step 6: propeller selection.
  const PropellerProduct& prop = at_step("step6_propeller_selection", [&]() -> const PropellerProduct& {
    return select_propeller({opt.blade_count, opt.pitch_angle, opt.diameter_m}, catalog.propellers);
  });
  result.propeller = prop;
  trace.push_back({"step6_propeller_selection",
                   {v("diameter", opt.diameter_m, "m"), v("pitch_angle", opt.pitch_angle, "rad")},
                   {v("diameter", prop.params.diameter_m, "m"), v("pitch", prop.params.pitch_m, "m"),
                    v("pitch_angle", prop.params.pitch_angle(), "rad")},
                   prop.id,
                   ""});

  // Step 7: ESC ratings match the motor.
  const EscTarget esc_target = step7_esc_params(opt.motor_max_voltage_v, opt.motor_max_current_a);
  opt.esc_max_voltage_v = esc_target.max_voltage_v;
  opt.esc_max_current_a = esc_target.max_current_a;
  trace.push_back({"step7_esc_params",
                   {},
                   {v("max_voltage", esc_target.max_voltage_v, "V"),
                    v("max_current", esc_target.max_current_a, "A")},
                   "",
                   ""});

  // Step 8: efficiency target.
  trace.push_back({"step8_esc_efficiency", {}, {v("resistance", 0.0, "ohm")}, "", ""});

  // Step 9: ESC selection. The selected motor's rated current must also fit.
  const EscTarget esc_floor{esc_target.max_voltage_v,
                            std::max(esc_target.max_current_a, motor->params.max_current_a)};
  const EscProduct& esc = at_step("step9_esc_selection", [&]() -> const EscProduct& {
    return select_esc(esc_floor, catalog.escs);
  });
  result.esc = esc;
  trace.push_back({"step9_esc_selection",
                   {v("max_voltage", esc_floor.max_voltage_v, "V"),
                    v("max_current", esc_floor.max_current_a, "A")},
                   {v("max_voltage", esc.params.max_voltage_v, "V"),
                    v("max_current", esc.params.max_current_a, "A"),
                    v("resistance", esc.params.resistance_ohm, "ohm")},
                   esc.id,
                   ""});

  // Step 10: efficiency target.
  trace.push_back({"step10_battery_efficiency", {}, {v("resistance", 0.0, "ohm")}, "", ""});

  // Step 11: battery voltage, capacity and rate from the hover current.
  ++st.hover_evaluations;
  const BatteryOptimum bo = at_step("step11_battery_params", [&] {
    return step11_battery_params(prop.params, motor->params, esc.params, opt.motor_max_voltage_v,
                                 opt.motor_max_current_a, req, coeffs);
  });
  opt.battery_voltage_v = bo.voltage_v;
  opt.battery_capacity_mah = bo.capacity_mah;
  opt.battery_rate_c = bo.rate_c;
  opt.hover_battery_current_a = bo.hover_battery_current_a;
  trace.push_back({"step11_battery_params",
                   {v("hover_battery_current", bo.hover_battery_current_a, "A"),
                    v("endurance", req.endurance_min, "min")},
                   {v("voltage", bo.voltage_v, "V"), v("capacity", bo.capacity_mah, "mAh"),
                    v("rate", bo.rate_c, "C")},
                   "",
                   ""});

  // Step 12: battery pack selection.
  const BatteryTarget bt{bo.voltage_v, bo.capacity_mah, bo.rate_c,
                         req.rotor_count * motor->params.max_current_a + req.other_current_a};
  result.battery = at_step("step12_battery_selection", [&] {
    return select_battery(bt, catalog.batteries, options.pack_limits);
  });
  trace.push_back({"step12_battery_selection",
                   {v("voltage", bt.voltage_v, "V"), v("capacity", bt.capacity_mah, "mAh"),
                    v("rate", bt.max_discharge_rate_c, "C"),
                    v("discharge_current", bt.min_discharge_current_a, "A")},
                   {v("voltage", result.battery.params.voltage_v, "V"),
                    v("capacity", result.battery.params.capacity_mah, "mAh"),
                    v("rate", result.battery.params.max_discharge_rate_c, "C"),
                    v("series", result.battery.series), v("parallel", result.battery.parallel)},
                   result.battery.label(),
                   ""});

  // Final evaluation. When pack sag and rounding cost endurance, redo step 12
  // with the capacity target scaled by the shortfall.
  const WeightModels* models = &stat.weight_models;
  auto run_report = [&] {
    ++st.hover_evaluations;
    st.full_throttle_evaluations += 2;
    return evaluate(result.system(coeffs), req.hover_thrust_n, req.max_thrust_n, models);
  };
  result.performance = run_report();
  BatteryTarget widened = bt;
  while (result.performance.hover_feasible &&
         result.performance.endurance_min < req.endurance_min) {
    const double have = result.battery.params.capacity_mah;
    widened.capacity_mah = std::nextafter(
        std::max(have * req.endurance_min / result.performance.endurance_min, have),
        std::numeric_limits<double>::infinity());
    try {
      result.battery = select_battery(widened, catalog.batteries, options.pack_limits);
    } catch (const Error&) {
      step_failure("endurance_check", "endurance",
                   str_cat("endurance ", result.performance.endurance_min,
                           " min is below the required ", req.endurance_min,
                           " min and no larger pack exists"),
                   {{"endurance", result.performance.endurance_min, req.endurance_min,
                     "endurance below requirement"}});
    }
    result.performance = run_report();
    trace.push_back({"endurance_escalation",
                     {v("capacity", widened.capacity_mah, "mAh")},
                     {v("capacity", result.battery.params.capacity_mah, "mAh"),
                      v("parallel", result.battery.parallel),
                      v("endurance", result.performance.endurance_min, "min")},
                     result.battery.label(),
                     "capacity target raised to meet endurance"});
  }
  if (!result.performance.safe) {
    const std::string constraint = result.performance.violations.front().constraint;
    step_failure("final_safety_check", constraint,
                 str_cat("selected system violates ", constraint),
                 result.performance.violations);
  }
  result.optimal = opt;
  return result;
}

}  // namespace propsizer
