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


#include "propsizer/error.hpp"

#include <cmath>

#include "propsizer/units.hpp"

namespace propsizer {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDomain:
      return "domain_error";
    case ErrorCode::kThrottleInfeasible:
      return "throttle_infeasible";
    case ErrorCode::kBrownout:
      return "brownout";
    case ErrorCode::kMotorInfeasible:
      return "motor_infeasible";
    case ErrorCode::kModelInconsistent:
      return "model_inconsistent";
    case ErrorCode::kInfiniteEndurance:
      return "infinite_endurance";
    case ErrorCode::kNumerical:
      return "numerical_error";
    case ErrorCode::kFit:
      return "fit_error";
    case ErrorCode::kOutOfCatalogRange:
      return "out_of_catalog_range";
    case ErrorCode::kSelectionInfeasible:
      return "selection_infeasible";
    case ErrorCode::kDesignInfeasible:
      return "design_infeasible";
    case ErrorCode::kCatalog:
      return "catalog_error";
    case ErrorCode::kSearchTooLarge:
      return "search_too_large";
    case ErrorCode::kInvalidInput:
      return "invalid_input";
  }
  return "unknown";
}

namespace units {

CellCount volts_to_cells(double volts) {
  const double raw = volts / kVoltsPerCell;
  const double nearest = std::round(raw);
  CellCount out;
  out.cells = static_cast<int>(nearest);
  out.exact = std::abs(volts - nearest * kVoltsPerCell) <= 1e-9;
  return out;
}

}  // namespace units
}  // namespace propsizer
