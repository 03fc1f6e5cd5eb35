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


#include "propsizer/json_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "str_util.hpp"

namespace propsizer {
namespace {

using internal::str_cat;

[[noreturn]] void bad_input(const std::string& what) {
  throw Error(ErrorCode::kInvalidInput, what);
}

void require_object(const Json& j, const std::string& what) {
  if (!j.is_object()) bad_input(str_cat(what, " must be a JSON object"));
}

void reject_unknown(const Json& j, std::initializer_list<const char*> known,
                    const std::string& what) {
  std::set<std::string> allowed(known.begin(), known.end());
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) bad_input(str_cat(what, ": unknown field '", it.key(), "'"));
  }
}

std::optional<double> opt_num(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_number()) bad_input(str_cat("'", key, "' must be a number"));
  const double v = it->get<double>();
  if (!std::isfinite(v)) bad_input(str_cat("'", key, "' must be finite"));
  return v;
}

double req_num(const Json& j, const char* key) {
  auto v = opt_num(j, key);
  if (!v) bad_input(str_cat("missing '", key, "'"));
  return *v;
}

int req_int(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_number_integer()) {
    bad_input(str_cat("'", key, "' must be an integer"));
  }
  return it->get<int>();
}

Json opt_json(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

template <typename Fn>
auto as_invalid_input(const std::string& what, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidInput) throw;
    bad_input(str_cat(what, ": ", e.what()));
  }
}

Json propeller_json(const PropellerParams& p) {
  return {{"diameter_m", p.diameter_m},
          {"pitch_m", p.pitch_m},
          {"blade_count", p.blade_count},
          {"pitch_angle_rad", p.pitch_angle()},
          {"weight_n", opt_json(p.weight_n)}};
}

Json motor_json(const MotorParams& m) {
  return {{"max_voltage_v", m.max_voltage_v},
          {"max_current_a", m.max_current_a},
          {"kv_rpm_per_v", m.kv},
          {"no_load_current_a", m.no_load_current_a},
          {"no_load_voltage_v", m.no_load_voltage_v},
          {"resistance_ohm", m.resistance_ohm},
          {"max_thrust_n", opt_json(m.max_thrust_n)},
          {"weight_n", opt_json(m.weight_n)}};
}

Json esc_json(const EscParams& e) {
  return {{"max_voltage_v", e.max_voltage_v},
          {"max_current_a", e.max_current_a},
          {"resistance_ohm", e.resistance_ohm},
          {"weight_n", opt_json(e.weight_n)}};
}

Json battery_json(const BatteryParams& b) {
  return {{"voltage_v", b.voltage_v},
          {"cells", b.cells()},
          {"capacity_mah", b.capacity_mah},
          {"max_discharge_rate_c", b.max_discharge_rate_c},
          {"max_discharge_current_a", b.max_discharge_current_a()},
          {"resistance_ohm", b.resistance_ohm},
          {"energy_density_wh_per_kg", b.energy_density_wh_per_kg},
          {"weight_n", opt_json(b.weight_n)}};
}

template <typename P, typename F>
Json product_json(const Product<P>& p, F params_fn) {
  Json j = {{"id", p.id}, {"params", params_fn(p.params)}, {"source", p.source}};
  j["price"] = opt_json(p.price);
  return j;
}

Json power_law_json(const std::optional<PowerLaw>& law, const char* x, const char* y) {
  if (!law) return nullptr;
  return {{"log_a", law->log_a}, {"exp_x", law->exp_x}, {"exp_y", law->exp_y},
          {"x", x}, {"y", y}};
}

std::optional<PowerLaw> power_law_from(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_object()) throw Error(ErrorCode::kCatalog, str_cat("weight model '", key, "' malformed"));
  PowerLaw law;
  law.log_a = req_num(*it, "log_a");
  law.exp_x = req_num(*it, "exp_x");
  law.exp_y = req_num(*it, "exp_y");
  if (law.exp_x < 0.0 || law.exp_y < 0.0) {
    throw Error(ErrorCode::kCatalog, str_cat("weight model '", key, "' has a negative exponent"));
  }
  return law;
}

template <typename P>
const Product<P>& find_product(const std::vector<Product<P>>& v, const std::string& id,
                               const char* what) {
  for (const auto& p : v) {
    if (p.id == id) return p;
  }
  bad_input(str_cat("unknown ", what, " '", id, "'"));
}

}  // namespace

DesignRequirements requirements_from_json(const Json& j) {
  require_object(j, "requirements");
  reject_unknown(j,
                 {"total_weight_n", "hover_thrust_n", "rotor_count", "thrust_ratio",
                  "max_thrust_n", "endurance_min", "altitude_m", "temperature_c",
                  "other_current_a"},
                 "requirements");
  const int rotors = req_int(j, "rotor_count");
  if (rotors < 1) bad_input(str_cat("rotor_count must be >= 1, got ", rotors));
  const auto total = opt_num(j, "total_weight_n");
  const auto hover = opt_num(j, "hover_thrust_n");
  if (total.has_value() == hover.has_value()) {
    bad_input("give exactly one of total_weight_n and hover_thrust_n");
  }
  const double hover_n = hover ? *hover : *total / rotors;
  const auto ratio = opt_num(j, "thrust_ratio");
  const auto max_n = opt_num(j, "max_thrust_n");
  double gamma = ratio.value_or(kDefaultThrustRatio);
  if (max_n) {
    if (!(*max_n > 0.0)) bad_input("max_thrust_n must be positive");
    const double implied = hover_n / *max_n;
    if (ratio && std::abs(implied - *ratio) > 1e-9 * *ratio) {
      bad_input("thrust_ratio and max_thrust_n disagree");
    }
    gamma = implied;
  }
  if (!(gamma > 0.0 && gamma < 1.0)) {
    bad_input(str_cat("thrust_ratio must be in (0,1), got ", gamma));
  }
  const double endurance = req_num(j, "endurance_min");
  const double altitude = opt_num(j, "altitude_m").value_or(0.0);
  DesignRequirements req =
      total ? DesignRequirements::from_total_weight(*total, rotors, gamma, endurance, altitude)
            : DesignRequirements::from_hover_thrust(*hover, rotors, gamma, endurance, altitude);
  req.temperature_c = opt_num(j, "temperature_c").value_or(kDefaultTemperature);
  req.other_current_a = opt_num(j, "other_current_a").value_or(kDefaultOtherCurrent);
  req.validate();
  return req;
}

Json to_json(const DesignRequirements& r) {
  return {{"rotor_count", r.rotor_count},
          {"total_weight_n", opt_json(r.total_weight_n)},
          {"hover_thrust_n", r.hover_thrust_n},
          {"thrust_ratio", r.thrust_ratio},
          {"max_thrust_n", r.max_thrust_n},
          {"altitude_m", r.altitude_m},
          {"temperature_c", r.temperature_c},
          {"endurance_min", r.endurance_min},
          {"other_current_a", r.other_current_a}};
}

Json to_json(const OperatingPoint& p) {
  return {{"speed_rpm", p.speed_rpm},
          {"torque_nm", p.torque_nm},
          {"thrust_n", p.thrust_n},
          {"motor_voltage_v", p.motor_voltage_v},
          {"motor_current_a", p.motor_current_a},
          {"throttle", p.throttle},
          {"esc_voltage_v", p.esc_voltage_v},
          {"esc_current_a", p.esc_current_a},
          {"battery_current_a", p.battery_current_a}};
}

Json to_json(const Violation& v) {
  return {{"constraint", v.constraint},
          {"actual", v.actual},
          {"limit", v.limit},
          {"message", v.message}};
}

Json to_json(const PerformanceReport& r) {
  Json violations = Json::array();
  for (const auto& v : r.violations) violations.push_back(to_json(v));
  return {{"hover", to_json(r.hover)},
          {"hover_battery_current_a", r.hover_battery_current_a},
          {"endurance_min", r.endurance_min},
          {"full_throttle", to_json(r.full_throttle)},
          {"full_throttle_thrust_n", r.full_throttle_thrust_n},
          {"system_weight_n", opt_json(r.system_weight_n)},
          {"efficiency",
           {{"eta_tm", r.eta_tm},
            {"motor", r.eta_motor},
            {"esc", r.eta_esc},
            {"battery", r.eta_battery}}},
          {"hover_feasible", r.hover_feasible},
          {"safe", r.safe},
          {"violations", violations}};
}

Json to_json(const OptimalParams& o) {
  return {{"propeller",
           {{"blade_count", o.blade_count},
            {"pitch_angle_rad", o.pitch_angle},
            {"diameter_m", o.diameter_m},
            {"pitch_m", o.pitch_m}}},
          {"motor",
           {{"max_voltage_v", o.motor_max_voltage_v},
            {"max_current_a", o.motor_max_current_a},
            {"kv_rpm_per_v", o.kv},
            {"resistance_ohm", o.motor_resistance_ohm},
            {"no_load_current_a", o.motor_no_load_current_a}}},
          {"esc",
           {{"max_voltage_v", o.esc_max_voltage_v},
            {"max_current_a", o.esc_max_current_a},
            {"resistance_ohm", o.esc_resistance_ohm}}},
          {"battery",
           {{"voltage_v", o.battery_voltage_v},
            {"capacity_mah", o.battery_capacity_mah},
            {"max_discharge_rate_c", o.battery_rate_c},
            {"resistance_ohm", o.battery_resistance_ohm}}},
          {"max_thrust_n", o.max_thrust_n},
          {"k_tm", o.k_tm},
          {"hover_battery_current_a", o.hover_battery_current_a}};
}

Json to_json(const TraceEntry& t) {
  auto values = [](const std::vector<TraceValue>& vs) {
    Json out = Json::array();
    for (const auto& v : vs) {
      out.push_back({{"name", v.name}, {"value", v.value}, {"unit", v.unit}});
    }
    return out;
  };
  return {{"step", t.step},
          {"inputs", values(t.inputs)},
          {"outputs", values(t.outputs)},
          {"selected", t.selected},
          {"note", t.note}};
}

Json to_json(const DesignResult& d) {
  Json trace = Json::array();
  for (const auto& t : d.trace) trace.push_back(to_json(t));
  Json battery = {{"id", d.battery.base.id},
                  {"label", d.battery.label()},
                  {"series", d.battery.series},
                  {"parallel", d.battery.parallel},
                  {"base", product_json(d.battery.base, battery_json)},
                  {"pack", battery_json(d.battery.params)}};
  return {{"requirements", to_json(d.requirements)},
          {"optimal", d.optimal ? to_json(*d.optimal) : Json(nullptr)},
          {"products",
           {{"propeller", product_json(d.propeller, propeller_json)},
            {"motor", product_json(d.motor, motor_json)},
            {"esc", product_json(d.esc, esc_json)},
            {"battery", battery}}},
          {"performance", to_json(d.performance)},
          {"trace", trace}};
}

std::string design_result_to_string(const DesignResult& d) {
  return to_json(d).dump(2) + "\n";
}

Json to_json(const ComparisonReport& c) {
  auto method = [](const MethodOutcome& m) {
    Json j = {{"ok", m.ok},
              {"error", m.error},
              {"weight_n", m.weight_n},
              {"endurance_min", m.endurance_min},
              {"wall_time_ms", m.wall_time_ms},
              {"hover_evaluations", m.evaluations}};
    if (m.design) {
      j["products"] = {{"propeller", m.design->propeller.id},
                       {"motor", m.design->motor.id},
                       {"esc", m.design->esc.id},
                       {"battery", m.design->battery.label()}};
    } else {
      j["products"] = nullptr;
    }
    return j;
  };
  return {{"catalog_sizes",
           {{"propeller", c.catalog_sizes[0]},
            {"motor", c.catalog_sizes[1]},
            {"esc", c.catalog_sizes[2]},
            {"battery", c.catalog_sizes[3]}}},
          {"combinations", c.combinations},
          {"analytical", method(c.analytical)},
          {"brute_force", method(c.brute_force)},
          {"time_ratio", c.time_ratio},
          {"weight_ratio", c.weight_ratio}};
}

Json error_to_json(const Error& e) {
  Json violations = Json::array();
  for (const auto& v : e.violations()) violations.push_back(to_json(v));
  return {{"error",
           {{"code", std::string(to_string(e.code()))},
            {"message", e.what()},
            {"step", e.step()},
            {"constraint", e.constraint()},
            {"violations", violations}}}};
}

Json stat_models_to_json(const StatModels& s) {
  Json tiers = Json::array();
  for (const auto& t : s.voltage_tiers.tiers) {
    tiers.push_back({{"max_thrust_n", t.max_thrust_n}, {"voltage_v", t.voltage_v}});
  }
  const WeightModels& w = s.weight_models;
  return {{"schema_version", kSchemaVersion},
          {"power_thrust",
           {{"g_wconst_n_per_w", s.power_thrust.g_wconst},
            {"rms_residual_n", s.power_thrust.rms_residual_n},
            {"record_count", s.power_thrust.record_count}}},
          {"voltage_tiers", tiers},
          {"weight_models",
           {{"propeller", power_law_json(w.propeller, "blade_count", "diameter_m")},
            {"motor", power_law_json(w.motor, "max_voltage_v", "max_thrust_n")},
            {"esc", power_law_json(w.esc, "max_voltage_v", "max_current_a")}}},
          {"k_c", w.k_c},
          {"provenance",
           {{"catalog_hash", s.provenance.catalog_hash}, {"fit_date", s.provenance.fit_date}}}};
}

StatModels stat_models_from_json(const Json& j) {
  try {
    if (!j.is_object()) throw Error(ErrorCode::kCatalog, "model file must be an object");
    if (!j.contains("schema_version") || !j["schema_version"].is_number_integer() ||
        j["schema_version"].get<int>() != kSchemaVersion) {
      throw Error(ErrorCode::kCatalog, "unsupported model schema_version");
    }
    StatModels s;
    const Json& pt = j.at("power_thrust");
    s.power_thrust.g_wconst = req_num(pt, "g_wconst_n_per_w");
    s.power_thrust.rms_residual_n = opt_num(pt, "rms_residual_n").value_or(0.0);
    s.power_thrust.record_count =
        static_cast<std::size_t>(opt_num(pt, "record_count").value_or(0.0));
    if (!(s.power_thrust.g_wconst > 0.0)) throw Error(ErrorCode::kCatalog, "g_wconst must be positive");
    const Json& tiers = j.at("voltage_tiers");
    if (!tiers.is_array()) throw Error(ErrorCode::kCatalog, "voltage_tiers must be an array");
    for (const auto& t : tiers) {
      s.voltage_tiers.tiers.push_back({req_num(t, "max_thrust_n"), req_num(t, "voltage_v")});
    }
    s.voltage_tiers.validate();
    const Json& w = j.at("weight_models");
    s.weight_models.propeller = power_law_from(w, "propeller");
    s.weight_models.motor = power_law_from(w, "motor");
    s.weight_models.esc = power_law_from(w, "esc");
    s.weight_models.k_c = req_num(j, "k_c");
    if (!(s.weight_models.k_c > 0.0)) throw Error(ErrorCode::kCatalog, "k_c must be positive");
    if (j.contains("provenance")) {
      const Json& p = j["provenance"];
      s.provenance.catalog_hash = p.value("catalog_hash", "");
      s.provenance.fit_date = p.value("fit_date", "");
    }
    return s;
  } catch (const Error& e) {
    throw Error(ErrorCode::kCatalog, str_cat("invalid model file: ", e.what()));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kCatalog, str_cat("invalid model file: ", e.what()));
  }
}

StatModels load_stat_models(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kCatalog, str_cat("cannot read ", path));
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kCatalog, str_cat(path, ": ", e.what()));
  }
  return stat_models_from_json(j);
}

Json catalog_to_json(const Catalog& c) {
  auto records = [](const auto& v, auto params_fn) {
    Json out = Json::array();
    for (const auto& p : v) {
      Json r = product_json(p, params_fn);
      r["weight_N"] = p.weight_n();
      out.push_back(std::move(r));
    }
    return out;
  };
  Json rejects = Json::array();
  for (const auto& d : c.rejects) {
    rejects.push_back({{"file", d.file}, {"line", d.line}, {"id", d.record_id},
                       {"message", d.message}});
  }
  return {{"schema_version", kSchemaVersion},
          {"content_hash", c.content_hash()},
          {"propeller", records(c.propellers, propeller_json)},
          {"motor", records(c.motors, motor_json)},
          {"esc", records(c.escs, esc_json)},
          {"battery", records(c.batteries, battery_json)},
          {"rejects", rejects}};
}

EvaluationRequest evaluation_request_from_json(const Json& j, const Catalog& catalog) {
  require_object(j, "system");
  reject_unknown(j,
                 {"propeller", "motor", "esc", "battery", "rotor_count", "hover_thrust_n",
                  "max_thrust_n", "thrust_ratio", "altitude_m", "temperature_c",
                  "other_current_a"},
                 "system");
  EvaluationRequest out;
  PropulsionSystem& s = out.system;
  std::vector<std::string> labels;

  auto component = [&](const char* key) -> const Json& {
    if (!j.contains(key)) bad_input(str_cat("missing '", key, "'"));
    return j[key];
  };

  const Json& p = component("propeller");
  if (p.is_string()) {
    s.propeller = find_product(catalog.propellers, p.get<std::string>(), "propeller").params;
    labels.push_back(p.get<std::string>());
  } else {
    require_object(p, "propeller");
    reject_unknown(p, {"diameter_m", "pitch_m", "blade_count", "weight_n"}, "propeller");
    s.propeller.diameter_m = req_num(p, "diameter_m");
    s.propeller.pitch_m = req_num(p, "pitch_m");
    s.propeller.blade_count = req_int(p, "blade_count");
    s.propeller.weight_n = opt_num(p, "weight_n");
  }

  const Json& m = component("motor");
  if (m.is_string()) {
    s.motor = find_product(catalog.motors, m.get<std::string>(), "motor").params;
    labels.push_back(m.get<std::string>());
  } else {
    require_object(m, "motor");
    reject_unknown(m,
                   {"max_voltage_v", "max_current_a", "kv_rpm_per_v", "no_load_current_a",
                    "no_load_voltage_v", "resistance_ohm", "max_thrust_n", "weight_n"},
                   "motor");
    s.motor.max_voltage_v = req_num(m, "max_voltage_v");
    s.motor.max_current_a = req_num(m, "max_current_a");
    s.motor.kv = req_num(m, "kv_rpm_per_v");
    s.motor.no_load_current_a = req_num(m, "no_load_current_a");
    s.motor.no_load_voltage_v = opt_num(m, "no_load_voltage_v").value_or(kDefaultNoLoadVoltage);
    s.motor.resistance_ohm = req_num(m, "resistance_ohm");
    s.motor.max_thrust_n = opt_num(m, "max_thrust_n");
    s.motor.weight_n = opt_num(m, "weight_n");
  }

  const Json& e = component("esc");
  if (e.is_string()) {
    s.esc = find_product(catalog.escs, e.get<std::string>(), "esc").params;
    labels.push_back(e.get<std::string>());
  } else {
    require_object(e, "esc");
    reject_unknown(e, {"max_voltage_v", "max_current_a", "resistance_ohm", "weight_n"}, "esc");
    s.esc.max_voltage_v = req_num(e, "max_voltage_v");
    s.esc.max_current_a = req_num(e, "max_current_a");
    s.esc.resistance_ohm = req_num(e, "resistance_ohm");
    s.esc.weight_n = opt_num(e, "weight_n");
  }

  const Json& b = component("battery");
  require_object(b, "battery");
  if (b.contains("id")) {
    reject_unknown(b, {"id", "series", "parallel"}, "battery");
    if (!b["id"].is_string()) bad_input("battery id must be a string");
    const int series = b.contains("series") ? req_int(b, "series") : 1;
    const int parallel = b.contains("parallel") ? req_int(b, "parallel") : 1;
    if (series < 1 || parallel < 1) bad_input("series and parallel must be >= 1");
    const BatteryPack pack = compose_pack(
        find_product(catalog.batteries, b["id"].get<std::string>(), "battery"), series, parallel);
    s.battery = pack.params;
    labels.push_back(pack.label());
  } else {
    reject_unknown(b,
                   {"voltage_v", "cells", "capacity_mah", "max_discharge_rate_c",
                    "resistance_ohm", "energy_density_wh_per_kg", "weight_n"},
                   "battery");
    if (b.contains("cells")) {
      if (b.contains("voltage_v")) bad_input("give one of battery cells and voltage_v");
      s.battery.voltage_v = units::cells_to_volts(req_int(b, "cells"));
    } else {
      s.battery.voltage_v = req_num(b, "voltage_v");
    }
    s.battery.capacity_mah = req_num(b, "capacity_mah");
    s.battery.max_discharge_rate_c = req_num(b, "max_discharge_rate_c");
    s.battery.resistance_ohm = req_num(b, "resistance_ohm");
    s.battery.energy_density_wh_per_kg =
        opt_num(b, "energy_density_wh_per_kg").value_or(kDefaultEnergyDensity);
    s.battery.weight_n = opt_num(b, "weight_n");
  }

  s.rotor_count = req_int(j, "rotor_count");
  s.environment.altitude_m = opt_num(j, "altitude_m").value_or(0.0);
  s.environment.temperature_c = opt_num(j, "temperature_c").value_or(kDefaultTemperature);
  s.other_current_a = opt_num(j, "other_current_a").value_or(kDefaultOtherCurrent);
  out.hover_thrust_n = opt_num(j, "hover_thrust_n").value_or(0.0);
  const auto max_n = opt_num(j, "max_thrust_n");
  const auto ratio = opt_num(j, "thrust_ratio");
  if (max_n && ratio) bad_input("give at most one of max_thrust_n and thrust_ratio");
  if (ratio && !(*ratio > 0.0 && *ratio < 1.0)) {
    bad_input(str_cat("thrust_ratio must be in (0,1), got ", *ratio));
  }
  if (max_n && !(*max_n > 0.0)) bad_input("max_thrust_n must be positive");
  out.max_thrust_n = max_n;
  out.thrust_ratio = ratio.value_or(kDefaultThrustRatio);

  as_invalid_input("system", [&] {
    s.propeller.validate();
    s.motor.validate();
    s.esc.validate();
    s.battery.validate();
    if (s.rotor_count < 1) bad_input("rotor_count must be >= 1");
    air_density(s.environment.altitude_m, s.environment.temperature_c);
  });
  for (const auto& l : labels) out.label += (out.label.empty() ? "" : " + ") + l;
  return out;
}

}  // namespace propsizer
