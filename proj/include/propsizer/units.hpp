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

#pragma once

// Hobbyist units (inches, "S" cells, grams) exist only at I/O boundaries.
// Everything inside the library is SI.

namespace propsizer::units {

inline constexpr double kPi = 3.14159265358979323846;

inline constexpr double kGravity = 9.8;            // m/s^2
inline constexpr double kStandardDensity = 1.293;  // kg/m^3 at 0 degC, 0 m
inline constexpr double kVoltsPerCell = 4.0;       // LiPo average

inline constexpr double kInchToMeter = 0.0254;
inline constexpr double kMeterToInch = 1.0 / kInchToMeter;

inline constexpr double inches(double in) { return in * kInchToMeter; }
inline constexpr double to_inches(double m) { return m * kMeterToInch; }

inline constexpr double grams_to_newtons(double g) {
  return g / 1000.0 * kGravity;
}
inline constexpr double newtons_to_grams(double n) {
  return n / kGravity * 1000.0;
}

inline constexpr double cells_to_volts(int cells) {
  return kVoltsPerCell * cells;
}

struct CellCount {
  int cells = 0;
  // False when the voltage was not an integer number of cells and `cells`
  // is only the nearest count.
  bool exact = true;
};

// Nearest cell count; `exact` flags whether the voltage was a multiple of
// 4.0 V within 1e-9 V.
CellCount volts_to_cells(double volts);

}  // namespace propsizer::units
