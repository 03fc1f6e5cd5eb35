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

#include <algorithm>
#include <cmath>

#include "str_util.hpp"

namespace propsizer {
namespace {

using internal::str_cat;
using units::kPi;

// Multiplicative slack on the safety inequalities so that exact boundary
// cases survive floating-point round-off.
constexpr double kBoundarySlack = 1e-12;

bool le(double a, double b) { return a <= b + kBoundarySlack * std::abs(b); }

struct Prepared {
  double density = 0.0;
  AeroCoeffs aero;
};

Prepared prepare(const PropulsionSystem& s) {
  s.propeller.validate();
  s.motor.validate();
  s.esc.validate();
  s.battery.validate();
  s.coeffs.validate();
  if (s.rotor_count < 1) {
    throw Error(ErrorCode::kDomain, "rotor_count must be >= 1");
  }
  if (!(s.other_current_a >= 0.0)) {
    throw Error(ErrorCode::kDomain, "other_current_a must be >= 0");
  }
  Prepared p;
  p.density = s.environment.air_density();
  p.aero = aero_coeffs(s.propeller.blade_count, s.propeller.pitch_angle(), s.coeffs);
  return p;
}

// Battery current drawn when the ESC input sits at `esc_voltage`.
double battery_current_at(const PropulsionSystem& s, const MotorState& m,
                          double esc_voltage) {
  const double sigma = (m.voltage_v + m.current_a * s.esc.resistance_ohm) / esc_voltage;
  return s.rotor_count * sigma * m.current_a + s.other_current_a;
}

}  // namespace

HoverSolution hover_point(const PropulsionSystem& s, double hover_thrust_n) {
  if (!(hover_thrust_n > 0.0)) {
    throw Error(ErrorCode::kDomain,
                str_cat("hover thrust must be positive, got ", hover_thrust_n));
  }
  const Prepared p = prepare(s);
  const double d = s.propeller.diameter_m;
  const double n = prop_speed_for_thrust(hover_thrust_n, d, p.aero.c_t, p.density);
  const ThrustTorque tt = prop_thrust_torque(n, d, p.aero.c_t, p.aero.c_m, p.density);
  const MotorState m = motor_im_um(tt.torque_nm, n, s.motor);

  const double ub = s.battery.voltage_v;
  const double rb = s.battery.resistance_ohm;
  double ue = ub;
  double ib = battery_current_at(s, m, ue);
  double prev_delta = 0.0;
  bool damped = false;
  int iterations = 0;
  bool converged = false;
  for (int it = 1; it <= kHoverMaxIterations; ++it) {
    double ue_next = ub - ib * rb;
    if (!(ue_next > 0.0)) {
      throw Error(ErrorCode::kBrownout,
                  str_cat("ESC input voltage collapsed to ", ue_next,
                          " V at battery current ", ib, " A"));
    }
    if (damped) ue_next = ue + 0.5 * (ue_next - ue);
    const double ib_next = battery_current_at(s, m, ue_next);
    const double delta = ib_next - ib;
    ue = ue_next;
    ib = ib_next;
    iterations = it;
    if (std::abs(delta) < kHoverTolerance) {
      converged = true;
      break;
    }
    if (it > 1 && delta * prev_delta < 0.0 && std::abs(delta) >= std::abs(prev_delta)) {
      damped = true;
    }
    prev_delta = delta;
  }
  if (!converged) {
    throw Error(ErrorCode::kNumerical,
                str_cat("hover fixed point did not converge in ",
                        kHoverMaxIterations, " iterations"));
  }
  const EscState esc = esc_solve(m.voltage_v, m.current_a, ue, s.esc.resistance_ohm);

  HoverSolution out;
  out.point.speed_rpm = n;
  out.point.torque_nm = tt.torque_nm;
  out.point.thrust_n = tt.thrust_n;
  out.point.motor_voltage_v = m.voltage_v;
  out.point.motor_current_a = m.current_a;
  out.point.throttle = esc.throttle;
  out.point.esc_voltage_v = ue;
  out.point.esc_current_a = esc.current_a;
  out.point.battery_current_a = s.rotor_count * esc.current_a + s.other_current_a;
  out.battery_current_a = out.point.battery_current_a;
  out.iterations = iterations;
  return out;
}

OperatingPoint full_throttle_point(const PropulsionSystem& s) {
  const Prepared p = prepare(s);
  const MotorParams& mp = s.motor;
  const double d = s.propeller.diameter_m;
  const double back = mp.no_load_voltage_v - mp.no_load_current_a * mp.resistance_ohm;
  const double ub = s.battery.voltage_v;

  struct State {
    double residual;
    ThrustTorque tt;
    MotorState m;
    double ib;
    double ue;
  };
  // At sigma = 1 the ESC input must equal U_m + I_m R_e.
  auto state_at = [&](double n) {
    State st;
    st.tt = prop_thrust_torque(n, d, p.aero.c_t, p.aero.c_m, p.density);
    st.m = motor_im_um(st.tt.torque_nm, n, mp);
    st.ib = s.rotor_count * st.m.current_a + s.other_current_a;
    st.ue = ub - st.ib * s.battery.resistance_ohm;
    st.residual = st.ue - st.m.voltage_v - st.m.current_a * s.esc.resistance_ohm;
    return st;
  };

  double lo = 0.0;
  double hi = ub * mp.kv * mp.no_load_voltage_v / back;
  try {
    hi = std::max(hi, 1.5 * motor_limits(mp).max_speed_rpm);
  } catch (const Error&) {
    // An over-rated motor still has a torque balance; keep the voltage bound.
  }
  if (!(state_at(lo).residual > 0.0) || state_at(hi).residual > 0.0) {
    throw Error(ErrorCode::kModelInconsistent,
                "no full-throttle torque balance in the speed bracket");
  }
  for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (state_at(mid).residual > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double n = 0.5 * (lo + hi);
  const State st = state_at(n);
  OperatingPoint out;
  out.speed_rpm = n;
  out.torque_nm = st.tt.torque_nm;
  out.thrust_n = st.tt.thrust_n;
  out.motor_voltage_v = st.m.voltage_v;
  out.motor_current_a = st.m.current_a;
  out.throttle = 1.0;
  out.esc_voltage_v = st.ue;
  out.esc_current_a = st.m.current_a;
  out.battery_current_a = st.ib;
  return out;
}

double endurance(const PropulsionSystem& system, double hover_thrust_n) {
  const HoverSolution h = hover_point(system, hover_thrust_n);
  return discharge_time(system.battery.capacity_mah, h.battery_current_a);
}

std::vector<Violation> check_safety(const PropulsionSystem& s,
                                    double max_thrust_n, double k_c) {
  std::vector<Violation> out;
  auto require_le = [&](const char* name, double actual, double limit,
                        const std::string& message) {
    if (!le(actual, limit)) out.push_back({name, actual, limit, message});
  };
  auto require_ge = [&](const char* name, double actual, double limit,
                        const std::string& message) {
    if (!le(limit, actual)) out.push_back({name, actual, limit, message});
  };
  const double ub = s.battery.voltage_v;
  require_le("battery_voltage_vs_motor", ub, s.motor.max_voltage_v,
             "battery voltage exceeds the motor's nominal maximum voltage");
  require_le("battery_voltage_vs_esc", ub, s.esc.max_voltage_v,
             "battery voltage exceeds the ESC's nominal maximum voltage");
  try {
    // The burnout limit takes the full-throttle motor voltage as U_b itself,
    // i.e. without pack sag or ESC drop; that is the worst case for I_m.
    PropulsionSystem stiff = s;
    stiff.battery.resistance_ohm = 0.0;
    stiff.esc.resistance_ohm = 0.0;
    const OperatingPoint ft = full_throttle_point(stiff);
    require_le("full_throttle_motor_current", ft.motor_current_a,
               s.motor.max_current_a,
               "full-throttle motor current exceeds the motor's nominal maximum");
  } catch (const Error& e) {
    out.push_back({"full_throttle_balance", 0.0, 0.0, e.what()});
  }
  require_le("motor_current_vs_esc", s.motor.max_current_a, s.esc.max_current_a,
             "motor nominal maximum current exceeds the ESC rating");
  try {
    const double rho = s.environment.air_density();
    const AeroCoeffs ac =
        aero_coeffs(s.propeller.blade_count, s.propeller.pitch_angle(), s.coeffs);
    const double t_max = corrected_max_thrust(
        s.motor, thrust_speed_constant(ac.c_t, ac.c_m, rho, k_c));
    require_ge("max_thrust", t_max, max_thrust_n,
               "motor/propeller maximum thrust is below the required maximum thrust");
  } catch (const Error& e) {
    out.push_back({"max_thrust", 0.0, max_thrust_n, e.what()});
  }
  require_ge("battery_discharge_current", s.battery.max_discharge_current_a(),
             s.rotor_count * s.motor.max_current_a + s.other_current_a,
             "battery maximum discharge current cannot feed all motors at full current");
  return out;
}

double system_weight(const PropulsionSystem& s, const WeightModels* models) {
  auto need = [&](const char* what) {
    if (models == nullptr) {
      throw Error(ErrorCode::kDomain, str_cat("missing ", what, " weight and no weight model"));
    }
  };
  double gp = 0.0;
  if (s.propeller.weight_n) {
    gp = *s.propeller.weight_n;
  } else {
    need("propeller");
    gp = models->predict_prop_weight(s.propeller.blade_count, s.propeller.diameter_m);
  }
  double gm = 0.0;
  if (s.motor.weight_n) {
    gm = *s.motor.weight_n;
  } else {
    need("motor");
    double t_max = 0.0;
    if (s.motor.max_thrust_n) {
      t_max = *s.motor.max_thrust_n;
    } else {
      const AeroCoeffs ac =
          aero_coeffs(s.propeller.blade_count, s.propeller.pitch_angle(), s.coeffs);
      t_max = corrected_max_thrust(
          s.motor, thrust_speed_constant(ac.c_t, ac.c_m, s.environment.air_density(),
                                         models->k_c));
    }
    gm = models->predict_motor_weight(s.motor.max_voltage_v, t_max);
  }
  double ge = 0.0;
  if (s.esc.weight_n) {
    ge = *s.esc.weight_n;
  } else {
    need("esc");
    ge = models->predict_esc_weight(s.esc.max_voltage_v, s.esc.max_current_a);
  }
  const double gb = s.battery.weight_n.value_or(
      battery_weight(s.battery.capacity_mah, s.battery.voltage_v,
                     s.battery.energy_density_wh_per_kg));
  return s.rotor_count * (gp + gm + ge) + gb;
}

PerformanceReport evaluate(const PropulsionSystem& s, double hover_thrust_n,
                           double max_thrust_n, const WeightModels* models) {
  PerformanceReport r;
  const double k_c = models != nullptr ? models->k_c : kDefaultCorrection;
  r.eta_tm = eta_tm(s.propeller.blade_count, s.propeller.pitch_angle(), s.coeffs);
  try {
    const HoverSolution h = hover_point(s, hover_thrust_n);
    r.hover = h.point;
    r.hover_battery_current_a = h.battery_current_a;
    r.endurance_min = discharge_time(s.battery.capacity_mah, h.battery_current_a);
    r.eta_motor = motor_efficiency(h.point.motor_voltage_v, h.point.motor_current_a,
                                   s.motor.resistance_ohm, s.motor.no_load_current_a);
    r.eta_esc = esc_efficiency(h.point.motor_voltage_v, h.point.motor_current_a,
                               s.esc.resistance_ohm);
    r.eta_battery = battery_efficiency(s.battery.voltage_v, h.battery_current_a,
                                       s.battery.resistance_ohm, s.other_current_a);
    r.hover_feasible = true;
  } catch (const Error& e) {
    r.violations.push_back({"hover", 0.0, 0.0,
                            str_cat(to_string(e.code()), ": ", e.what())});
  }
  try {
    r.full_throttle = full_throttle_point(s);
    r.full_throttle_thrust_n = r.full_throttle.thrust_n;
  } catch (const Error&) {
    // Reported by check_safety.
  }
  std::vector<Violation> safety = check_safety(s, max_thrust_n, k_c);
  r.violations.insert(r.violations.end(), safety.begin(), safety.end());
  try {
    r.system_weight_n = system_weight(s, models);
  } catch (const Error&) {
    r.system_weight_n.reset();
  }
  r.safe = r.violations.empty();
  return r;
}

}  // namespace propsizer
