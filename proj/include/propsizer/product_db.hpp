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


// Product catalogs and the four ordered, safety-constrained selectors.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "propsizer/core_models.hpp"
#include "propsizer/stat_models.hpp"

namespace propsizer {

enum class ComponentClass { kPropeller, kMotor, kEsc, kBattery };

std::string_view to_string(ComponentClass c);
ComponentClass component_class_from_string(std::string_view s);

// `params.weight_n` is always set for catalog records.
template <typename Params>
struct Product {
  std::string id;
  Params params;
  std::string source;
  std::optional<double> price;

  double weight_n() const { return params.weight_n.value_or(0.0); }
};

using PropellerProduct = Product<PropellerParams>;
using MotorProduct = Product<MotorParams>;
using EscProduct = Product<EscParams>;
using BatteryProduct = Product<BatteryParams>;

struct Diagnostic {
  std::string file;
  int line = 0;  // 1-based, 0 when unknown
  std::string record_id;
  std::string message;
};

struct Catalog {
  std::vector<PropellerProduct> propellers;
  std::vector<MotorProduct> motors;
  std::vector<EscProduct> escs;
  std::vector<BatteryProduct> batteries;
  // Rejected records.
  std::vector<Diagnostic> rejects;

  // SHA-256 over the canonical (id-sorted) serialization of all records.
  std::string content_hash() const;
  std::size_t size() const {
    return propellers.size() + motors.size() + escs.size() + batteries.size();
  }
};

inline constexpr int kSchemaVersion = 1;

// Loads propellers.json, motors.json, escs.json and batteries.json from
// `dir`. Invalid records are rejected into Catalog::rejects; unreadable
// files and schema-version mismatches throw kCatalog.
Catalog load_catalog(const std::string& dir);

// Loads one class file and appends its records to `catalog`.
void load_catalog_file(const std::string& path, Catalog& catalog);

// Parses one class document from text; `name` labels diagnostics.
void parse_catalog_text(const std::string& text, const std::string& name,
                        Catalog& catalog);

// One class file (schema v1) with the records of `cls`, sorted by id.
std::string class_document(const Catalog& catalog, ComponentClass cls);

// Header-driven CSV import. Columns carry unit suffixes; see docs/schema.md.
void import_csv(const std::string& path, ComponentClass cls, Catalog& catalog);
void import_csv_text(const std::string& text, const std::string& name,
                     ComponentClass cls, Catalog& catalog);

// Fits all catalog statistics (power-thrust constant, voltage tiers, weight
// surfaces for classes with >= 5 records).
StatModels fit_stat_models(const Catalog& catalog, const std::string& fit_date);

struct MotorTarget {
  double max_voltage_v = 0.0;
  double max_current_a = 0.0;
  double kv = 0.0;
};

struct PropellerTarget {
  int blade_count = 2;
  double pitch_angle = 0.0;
  double diameter_m = 0.0;
};

struct EscTarget {
  double max_voltage_v = 0.0;
  double max_current_a = 0.0;
};

struct BatteryTarget {
  double voltage_v = 0.0;
  double capacity_mah = 0.0;
  double max_discharge_rate_c = 0.0;
  // Optional floor on K_b C_b / 1000, in amperes.
  double min_discharge_current_a = 0.0;
};

struct PackLimits {
  int max_series = 8;
  int max_parallel = 8;
};

struct BatteryPack {
  BatteryProduct base;
  int series = 1;
  int parallel = 1;
  BatteryParams params;  // resulting pack parameters, weight included

  int units() const { return series * parallel; }
  std::string label() const;
};

// Series multiplies voltage and resistance; parallel multiplies capacity and
// divides resistance. The rate K_b is unchanged, so the current limit scales
// with the parallel count.
BatteryPack compose_pack(const BatteryProduct& base, int series, int parallel);

// Band of the pitch-angle match, relative to the target.
inline constexpr double kPitchBand = 0.2;

// U >= and I >= floors, then minimal U, nearest K_V, minimal I, minimal R_m,
// minimal I_m0, lowest weight, identifier.
const MotorProduct& select_motor(const MotorTarget& target,
                                 const std::vector<MotorProduct>& motors);

// Blade count exact and D <= D_pOpt; then candidates whose pitch angle is
// within the band ahead of the rest, largest diameter, nearest pitch
// angle, lowest weight, identifier.
const PropellerProduct& select_propeller(
    const PropellerTarget& target, const std::vector<PropellerProduct>& props);

// U >= and I >= floors, then minimal U, minimal I, minimal R_e, lowest weight,
// identifier.
const EscProduct& select_esc(const EscTarget& target,
                             const std::vector<EscProduct>& escs);

// All (record, series, parallel) compositions within `limits` whose voltage
// equals the target cell count and whose capacity, rate and current limit
// meet the floors; minimal pack weight, fewest units, identifier.
BatteryPack select_battery(const BatteryTarget& target,
                           const std::vector<BatteryProduct>& batteries,
                           const PackLimits& limits = {});

// Every composition in `limits`, used by exhaustive search.
std::vector<BatteryPack> enumerate_packs(
    const std::vector<BatteryProduct>& batteries, const PackLimits& limits);

}  // namespace propsizer
