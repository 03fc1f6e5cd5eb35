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


#include "propsizer/baseline.hpp"

#include <chrono>
#include <cmath>
#include <thread>
#include <tuple>
#include <vector>

#include "str_util.hpp"

namespace propsizer {
namespace {

using internal::str_cat;

struct Candidate {
  double weight_n = 0.0;
  std::size_t prop = 0;
  std::size_t motor = 0;
  std::size_t esc = 0;
  std::size_t battery = 0;
  int series = 0;
  int parallel = 0;
};

struct Worker {
  std::optional<Candidate> best;
  BruteForceStats stats;
};

bool better(const Candidate& a, const Candidate& b, const Catalog& c) {
  auto key = [&](const Candidate& x) {
    return std::make_tuple(x.weight_n, std::string_view(c.propellers[x.prop].id),
                           std::string_view(c.motors[x.motor].id),
                           std::string_view(c.escs[x.esc].id),
                           std::string_view(c.batteries[x.battery].id), x.series,
                           x.parallel);
  };
  return key(a) < key(b);
}

PropulsionSystem make_system(const DesignRequirements& req, const Catalog& c,
                             std::size_t ip, std::size_t im, std::size_t ie,
                             const BatteryPack& pack, const BladeCoeffs& coeffs) {
  PropulsionSystem s;
  s.propeller = c.propellers[ip].params;
  s.motor = c.motors[im].params;
  s.esc = c.escs[ie].params;
  s.battery = pack.params;
  s.rotor_count = req.rotor_count;
  s.environment = req.environment();
  s.other_current_a = req.other_current_a;
  s.coeffs = coeffs;
  return s;
}

void search_motor_range(const DesignRequirements& req, const Catalog& c,
                        const StatModels& stat, const BruteForceOptions& opt,
                        std::size_t motor_begin, std::size_t motor_end, Worker& w) {
  const double rho = air_density(req.altitude_m, req.temperature_c);
  const double k_c = stat.weight_models.k_c;
  for (std::size_t ip = 0; ip < c.propellers.size(); ++ip) {
    const PropellerParams& prop = c.propellers[ip].params;
    const AeroCoeffs ac = aero_coeffs(prop.blade_count, prop.pitch_angle(), opt.coeffs);
    const double k_tm = thrust_speed_constant(ac.c_t, ac.c_m, rho, k_c);
    for (std::size_t im = motor_begin; im < motor_end; ++im) {
      const MotorParams& motor = c.motors[im].params;
      const bool thrust_ok = corrected_max_thrust(motor, k_tm) >= req.max_thrust_n;
      for (std::size_t ie = 0; ie < c.escs.size(); ++ie) {
        const EscParams& esc = c.escs[ie].params;
        for (std::size_t ib = 0; ib < c.batteries.size(); ++ib) {
          ++w.stats.combinations;
          for (int s = 1; s <= opt.pack_limits.max_series; ++s) {
            for (int p = 1; p <= opt.pack_limits.max_parallel; ++p) {
              ++w.stats.pack_evaluations;
              // Cheap necessary conditions of check_safety first.
              if (!thrust_ok || motor.max_current_a > esc.max_current_a) continue;
              const BatteryPack pack = compose_pack(c.batteries[ib], s, p);
              const double ub = pack.params.voltage_v;
              if (ub > motor.max_voltage_v || ub > esc.max_voltage_v) continue;
              if (pack.params.max_discharge_current_a() <
                  req.rotor_count * motor.max_current_a + req.other_current_a) {
                continue;
              }
              const PropulsionSystem sys = make_system(req, c, ip, im, ie, pack, opt.coeffs);
              ++w.stats.hover_evaluations;
              double t = 0.0;
              try {
                t = discharge_time(pack.params.capacity_mah,
                                   hover_point(sys, req.hover_thrust_n).battery_current_a);
              } catch (const Error&) {
                continue;
              }
              if (t < req.endurance_min) continue;
              if (!check_safety(sys, req.max_thrust_n, k_c).empty()) continue;
              ++w.stats.feasible;
              Candidate cand{system_weight(sys, &stat.weight_models), ip, im, ie, ib, s, p};
              if (!w.best || better(cand, *w.best, c)) w.best = cand;
            }
          }
        }
      }
    }
  }
}

}  // namespace

DesignResult brute_force(const DesignRequirements& req, const Catalog& catalog,
                         const StatModels& stat, const BruteForceOptions& options,
                         BruteForceStats* stats) {
  try {
    req.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kDesignInfeasible, e.what(), "requirements", "requirements");
  }
  const std::size_t combos = catalog.propellers.size() * catalog.motors.size() *
                             catalog.escs.size() * catalog.batteries.size();
  if (combos > options.max_combinations) {
    throw Error(ErrorCode::kSearchTooLarge,
                str_cat("brute force would visit ", combos, " combinations (",
                        catalog.propellers.size(), " x ", catalog.motors.size(), " x ",
                        catalog.escs.size(), " x ", catalog.batteries.size(),
                        "), above the cap of ", options.max_combinations));
  }
  const std::size_t n_motor = catalog.motors.size();
  const unsigned threads =
      std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(std::max<std::size_t>(n_motor, 1))));
  std::vector<Worker> workers(threads);
  if (threads == 1) {
    search_motor_range(req, catalog, stat, options, 0, n_motor, workers[0]);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = n_motor * t / threads;
      const std::size_t end = n_motor * (t + 1) / threads;
      pool.emplace_back([&, begin, end, t] {
        search_motor_range(req, catalog, stat, options, begin, end, workers[t]);
      });
    }
    for (auto& th : pool) th.join();
  }
  BruteForceStats total;
  std::optional<Candidate> best;
  for (const auto& w : workers) {
    total.combinations += w.stats.combinations;
    total.pack_evaluations += w.stats.pack_evaluations;
    total.hover_evaluations += w.stats.hover_evaluations;
    total.feasible += w.stats.feasible;
    if (w.best && (!best || better(*w.best, *best, catalog))) best = w.best;
  }
  if (stats != nullptr) *stats = total;
  if (!best) {
    throw Error(ErrorCode::kDesignInfeasible,
                str_cat("brute force: none of ", total.combinations,
                        " combinations is feasible"),
                "brute_force", "feasible_set");
  }
  DesignResult r;
  r.requirements = req;
  r.propeller = catalog.propellers[best->prop];
  r.motor = catalog.motors[best->motor];
  r.esc = catalog.escs[best->esc];
  r.battery = compose_pack(catalog.batteries[best->battery], best->series, best->parallel);
  r.performance = evaluate(r.system(options.coeffs), req.hover_thrust_n, req.max_thrust_n,
                           &stat.weight_models);
  r.trace.push_back(
      {"brute_force",
       {{"propellers", static_cast<double>(catalog.propellers.size()), ""},
        {"motors", static_cast<double>(catalog.motors.size()), ""},
        {"escs", static_cast<double>(catalog.escs.size()), ""},
        {"batteries", static_cast<double>(catalog.batteries.size()), ""}},
       {{"combinations", static_cast<double>(total.combinations), ""},
        {"pack_evaluations", static_cast<double>(total.pack_evaluations), ""},
        {"hover_evaluations", static_cast<double>(total.hover_evaluations), ""},
        {"feasible", static_cast<double>(total.feasible), ""},
        {"system_weight", best->weight_n, "N"}},
       "",
       "exhaustive minimum-weight search"});
  return r;
}

ComparisonReport compare(const DesignRequirements& req, const Catalog& catalog,
                         const StatModels& stat,
                         const OptimizerOptions& optimizer_options,
                         const BruteForceOptions& brute_options) {
  using clock = std::chrono::steady_clock;
  auto ms_since = [](clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock::now() - t0).count();
  };
  ComparisonReport report;
  report.catalog_sizes[0] = catalog.propellers.size();
  report.catalog_sizes[1] = catalog.motors.size();
  report.catalog_sizes[2] = catalog.escs.size();
  report.catalog_sizes[3] = catalog.batteries.size();
  report.combinations = report.catalog_sizes[0] * report.catalog_sizes[1] *
                        report.catalog_sizes[2] * report.catalog_sizes[3];

  auto fill = [](MethodOutcome& out, DesignResult&& d) {
    out.ok = true;
    out.weight_n = d.performance.system_weight_n.value_or(0.0);
    out.endurance_min = d.performance.endurance_min;
    out.design = std::move(d);
  };
  {
    OptimizeStats st;
    const auto t0 = clock::now();
    try {
      DesignResult d = optimize(req, catalog, stat, optimizer_options, &st);
      report.analytical.wall_time_ms = ms_since(t0);
      fill(report.analytical, std::move(d));
    } catch (const Error& e) {
      report.analytical.wall_time_ms = ms_since(t0);
      report.analytical.error = e.what();
    }
    report.analytical.evaluations = static_cast<std::size_t>(st.hover_evaluations);
  }
  {
    BruteForceStats st;
    const auto t0 = clock::now();
    try {
      DesignResult d = brute_force(req, catalog, stat, brute_options, &st);
      report.brute_force.wall_time_ms = ms_since(t0);
      fill(report.brute_force, std::move(d));
    } catch (const Error& e) {
      report.brute_force.wall_time_ms = ms_since(t0);
      report.brute_force.error = e.what();
    }
    report.brute_force.evaluations = st.hover_evaluations;
  }
  if (report.analytical.ok && report.brute_force.ok) {
    if (report.analytical.wall_time_ms > 0.0) {
      report.time_ratio = report.brute_force.wall_time_ms / report.analytical.wall_time_ms;
    }
    if (report.brute_force.weight_n > 0.0) {
      report.weight_ratio = report.analytical.weight_n / report.brute_force.weight_n;
    }
  }
  return report;
}

}  // namespace propsizer
