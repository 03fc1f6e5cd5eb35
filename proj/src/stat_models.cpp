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


#include "propsizer/stat_models.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "propsizer/error.hpp"
#include "str_util.hpp"

namespace propsizer {
namespace {

using internal::str_cat;

[[noreturn]] void fit_error(const std::string& what) {
  throw Error(ErrorCode::kFit, what);
}

struct LogFit {
  bool ok = false;
  double sse = std::numeric_limits<double>::infinity();
  PowerLaw law;
};

// Least squares on the given subset of log-regressors (0 = x, 1 = y).
LogFit solve_subset(const Eigen::MatrixXd& logs, const Eigen::VectorXd& target,
                    bool use_x, bool use_y) {
  const Eigen::Index n = target.size();
  const int cols = 1 + (use_x ? 1 : 0) + (use_y ? 1 : 0);
  Eigen::MatrixXd a(n, cols);
  a.col(0).setOnes();
  int c = 1;
  if (use_x) a.col(c++) = logs.col(0);
  if (use_y) a.col(c++) = logs.col(1);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  qr.setThreshold(1e-10);
  if (qr.rank() < cols) return {};
  const Eigen::VectorXd beta = qr.solve(target);
  LogFit out;
  out.ok = true;
  out.sse = (a * beta - target).squaredNorm();
  out.law.log_a = beta(0);
  c = 1;
  if (use_x) out.law.exp_x = beta(c++);
  if (use_y) out.law.exp_y = beta(c++);
  return out;
}

bool nearly_constant(const Eigen::VectorXd& v) {
  return (v.array() - v.mean()).abs().maxCoeff() < 1e-12;
}

}  // namespace

double VoltageTierModel::lookup(double thrust_n) const {
  return tiers[tier_index(thrust_n)].voltage_v;
}

std::size_t VoltageTierModel::tier_index(double thrust_n) const {
  if (!(thrust_n > 0.0)) {
    throw Error(ErrorCode::kDomain,
                str_cat("thrust must be positive, got ", thrust_n));
  }
  for (std::size_t i = 0; i < tiers.size(); ++i) {
    if (thrust_n <= tiers[i].max_thrust_n) return i;
  }
  throw Error(ErrorCode::kOutOfCatalogRange,
              str_cat("thrust ", thrust_n, " N exceeds the last voltage tier (",
                      tiers.empty() ? 0.0 : tiers.back().max_thrust_n, " N)"));
}

void VoltageTierModel::validate() const {
  if (tiers.empty()) fit_error("voltage tier table is empty");
  for (std::size_t i = 0; i < tiers.size(); ++i) {
    if (!(tiers[i].max_thrust_n > 0.0) || !(tiers[i].voltage_v > 0.0)) {
      fit_error(str_cat("tier ", i, " has non-positive entries"));
    }
    if (i > 0 && !(tiers[i].max_thrust_n > tiers[i - 1].max_thrust_n &&
                   tiers[i].voltage_v >= tiers[i - 1].voltage_v)) {
      fit_error(str_cat("tier ", i, " breaks monotonicity"));
    }
  }
}

double PowerLaw::predict(double x, double y) const {
  return std::exp(log_a) * std::pow(x, exp_x) * std::pow(y, exp_y);
}

namespace {

double require_model(const std::optional<PowerLaw>& law, const char* what,
                     double x, double y) {
  if (!law) fit_error(str_cat("no fitted ", what, " weight model"));
  return law->predict(x, y);
}

}  // namespace

double WeightModels::predict_prop_weight(int blade_count,
                                         double diameter_m) const {
  return require_model(propeller, "propeller", blade_count, diameter_m);
}

double WeightModels::predict_motor_weight(double max_voltage_v,
                                          double max_thrust_n) const {
  return require_model(motor, "motor", max_voltage_v, max_thrust_n);
}

double WeightModels::predict_esc_weight(double max_voltage_v,
                                        double max_current_a) const {
  return require_model(esc, "esc", max_voltage_v, max_current_a);
}

PowerThrustModel fit_power_thrust(const std::vector<PowerThrustPoint>& points) {
  if (points.size() < 3) {
    fit_error(str_cat("power/thrust fit needs >= 3 records, got ", points.size()));
  }
  double sxy = 0.0;
  double sxx = 0.0;
  for (const auto& p : points) {
    if (!(p.power_w > 0.0) || !(p.max_thrust_n > 0.0)) {
      fit_error("power/thrust records must be positive");
    }
    sxy += p.power_w * p.max_thrust_n;
    sxx += p.power_w * p.power_w;
  }
  PowerThrustModel out;
  out.g_wconst = sxy / sxx;
  out.record_count = points.size();
  double ss = 0.0;
  for (const auto& p : points) {
    const double r = p.max_thrust_n - out.g_wconst * p.power_w;
    ss += r * r;
  }
  out.rms_residual_n = std::sqrt(ss / points.size());
  return out;
}

VoltageTierModel fit_voltage_tiers(const std::vector<VoltageThrustPoint>& points) {
  std::map<double, double> class_max;
  for (const auto& p : points) {
    if (!(p.max_voltage_v > 0.0) || !(p.max_thrust_n > 0.0)) {
      fit_error("voltage/thrust records must be positive");
    }
    auto [it, inserted] = class_max.emplace(p.max_voltage_v, p.max_thrust_n);
    if (!inserted) it->second = std::max(it->second, p.max_thrust_n);
  }
  if (class_max.empty()) fit_error("no voltage classes to fit");
  VoltageTierModel out;
  for (const auto& [voltage, thrust] : class_max) {
    // A class that does not extend the thrust range is already served by a
    // lower voltage.
    if (!out.tiers.empty() && thrust <= out.tiers.back().max_thrust_n) continue;
    out.tiers.push_back({thrust, voltage});
  }
  return out;
}

PowerLaw fit_power_law(const std::vector<WeightSample>& samples) {
  if (samples.size() < 5) {
    fit_error(str_cat("weight fit needs >= 5 records, got ", samples.size()));
  }
  const Eigen::Index n = static_cast<Eigen::Index>(samples.size());
  Eigen::MatrixXd logs(n, 2);
  Eigen::VectorXd target(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& s = samples[static_cast<std::size_t>(i)];
    if (!(s.x > 0.0) || !(s.y > 0.0) || !(s.weight_n > 0.0)) {
      fit_error("weight fit samples must be positive");
    }
    logs(i, 0) = std::log(s.x);
    logs(i, 1) = std::log(s.y);
    target(i) = std::log(s.weight_n);
  }
  const bool vary_x = !nearly_constant(logs.col(0));
  const bool vary_y = !nearly_constant(logs.col(1));
  if (vary_x && vary_y) {
    LogFit full = solve_subset(logs, target, true, true);
    if (!full.ok) fit_error("weight fit design matrix is rank deficient");
  }
  // Exact nonnegative least squares over the four active sets.
  LogFit best;
  for (int mask = 0; mask < 4; ++mask) {
    const bool use_x = (mask & 1) != 0;
    const bool use_y = (mask & 2) != 0;
    if ((use_x && !vary_x) || (use_y && !vary_y)) continue;
    LogFit f = solve_subset(logs, target, use_x, use_y);
    if (!f.ok || f.law.exp_x < 0.0 || f.law.exp_y < 0.0) continue;
    if (f.sse < best.sse - 1e-15) best = f;
  }
  if (!best.ok) fit_error("weight fit failed");
  return best.law;
}

}  // namespace propsizer
