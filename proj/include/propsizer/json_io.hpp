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


// JSON documents exchanged by the CLI and the HTTP service. All numbers are
// SI; field names are snake_case with a unit suffix where one applies.

#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "propsizer/baseline.hpp"
#include "propsizer/evaluator.hpp"
#include "propsizer/optimizer.hpp"
#include "propsizer/product_db.hpp"
#include "propsizer/stat_models.hpp"

namespace propsizer {

using Json = nlohmann::json;

// Requirements accept either total_weight_n (+ rotor_count) or
// hover_thrust_n, and either thrust_ratio (default 0.5) or max_thrust_n.
// Throws kInvalidInput on malformed or inconsistent documents.
DesignRequirements requirements_from_json(const Json& j);
Json to_json(const DesignRequirements& req);

Json to_json(const OperatingPoint& p);
Json to_json(const PerformanceReport& r);
Json to_json(const OptimalParams& o);
Json to_json(const TraceEntry& t);
Json to_json(const DesignResult& d);
Json to_json(const ComparisonReport& c);
Json to_json(const Violation& v);
Json error_to_json(const Error& e);

// Canonical serialization shared by the CLI and the service.
std::string design_result_to_string(const DesignResult& d);

Json stat_models_to_json(const StatModels& s);
// Validates the schema; throws kCatalog.
StatModels stat_models_from_json(const Json& j);
StatModels load_stat_models(const std::string& path);

// Catalog in the per-class file layout, plus the content hash.
Json catalog_to_json(const Catalog& c);

struct EvaluationRequest {
  PropulsionSystem system;
  double hover_thrust_n = 0.0;
  std::optional<double> max_thrust_n;
  double thrust_ratio = kDefaultThrustRatio;
  // Product labels when the system referenced catalog records.
  std::string label;

  // max_thrust_n when given, else hover_thrust_n / thrust_ratio.
  double max_thrust() const {
    return max_thrust_n.value_or(hover_thrust_n / thrust_ratio);
  }
};

// A system document names each component either inline (SI parameters) or
// by catalog identifier. Throws kInvalidInput.
EvaluationRequest evaluation_request_from_json(const Json& j, const Catalog& catalog);

}  // namespace propsizer
