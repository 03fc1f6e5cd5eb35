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


// propsizer: command-line front end.
//
//   propsizer optimize --weight-N 196 --rotors 4 --endurance-min 17 --altitude-m 50
//   propsizer evaluate --system system.json
//   propsizer fit --catalog data/catalog --out models.json
//   propsizer compare --catalog DIR --requirements req.json
//   propsizer serve --port 8080
//
// Exit codes: 0 success, 1 usage or input error, 2 design infeasible.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "httplib.h"
#include "propsizer/baseline.hpp"
#include "propsizer/json_io.hpp"
#include "propsizer/optimizer.hpp"
#include "propsizer/product_db.hpp"
#include "propsizer/service.hpp"

namespace {

using propsizer::Error;
using propsizer::ErrorCode;
using propsizer::Json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;

struct CommonFlags {
  std::string catalog_dir;
  std::string models_path;
  std::string out_path;
  std::string format = "json";
};

std::string today() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[16];
  std::strftime(buf, sizeof(buf), "%Y-%m-%d", &tm);
  return buf;
}

std::string resolve_catalog_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("PROPSIZER_CATALOG_DIR"); env != nullptr && *env) {
    return env;
  }
  throw Error(ErrorCode::kCatalog, "no catalog: pass --catalog DIR or set PROPSIZER_CATALOG_DIR");
}

propsizer::Catalog load(const CommonFlags& f) {
  propsizer::Catalog c = propsizer::load_catalog(resolve_catalog_dir(f.catalog_dir));
  for (const auto& d : c.rejects) {
    std::cerr << "warning: " << d.file << ":" << d.line << ": rejected '" << d.record_id
              << "': " << d.message << "\n";
  }
  return c;
}

propsizer::StatModels models_for(const CommonFlags& f, const propsizer::Catalog& c) {
  if (!f.models_path.empty()) return propsizer::load_stat_models(f.models_path);
  return propsizer::fit_stat_models(c, today());
}

void emit(const CommonFlags& f, const std::string& text) {
  if (f.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(f.out_path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kInvalidInput, "cannot write " + f.out_path);
  out << text;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidInput, "cannot read " + path);
  try {
    Json j;
    in >> j;
    return j;
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kInvalidInput, path + ": " + e.what());
  }
}

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

std::string design_text(const propsizer::DesignResult& d) {
  std::ostringstream os;
  const auto& r = d.requirements;
  os << "requirements: n_p=" << r.rotor_count << "  T_hover=" << fixed(r.hover_thrust_n, 3)
     << " N  T_max=" << fixed(r.max_thrust_n, 3) << " N  t_hover=" << fixed(r.endurance_min, 2)
     << " min  h=" << fixed(r.altitude_m, 1) << " m\n";
  if (d.optimal) {
    const auto& o = *d.optimal;
    os << "optimal: B_p=" << o.blade_count << "  phi_p=" << fixed(o.pitch_angle, 5)
       << " rad  D_p=" << fixed(o.diameter_m, 4) << " m  H_p=" << fixed(o.pitch_m, 4) << " m\n"
       << "         U_mMax=" << fixed(o.motor_max_voltage_v, 1)
       << " V  I_mMax=" << fixed(o.motor_max_current_a, 2) << " A  K_V=" << fixed(o.kv, 1)
       << " RPM/V\n"
       << "         U_b=" << fixed(o.battery_voltage_v, 1)
       << " V  C_b=" << fixed(o.battery_capacity_mah, 0) << " mAh  K_b="
       << fixed(o.battery_rate_c, 2) << " C  (I_b0=" << fixed(o.hover_battery_current_a, 2)
       << " A)\n";
  }
  os << "propeller: " << d.propeller.id << "\n"
     << "motor:     " << d.motor.id << "\n"
     << "esc:       " << d.esc.id << "\n"
     << "battery:   " << d.battery.label() << "\n";
  const auto& p = d.performance;
  os << "hover: N=" << fixed(p.hover.speed_rpm, 0) << " RPM  I_m="
     << fixed(p.hover.motor_current_a, 2) << " A  sigma=" << fixed(p.hover.throttle, 3)
     << "  I_b=" << fixed(p.hover_battery_current_a, 2) << " A\n"
     << "endurance: " << fixed(p.endurance_min, 2) << " min\n"
     << "full throttle: T=" << fixed(p.full_throttle_thrust_n, 2)
     << " N  I_m=" << fixed(p.full_throttle.motor_current_a, 2) << " A\n";
  if (p.system_weight_n) os << "system weight: " << fixed(*p.system_weight_n, 2) << " N\n";
  os << "trace:\n";
  for (const auto& t : d.trace) {
    os << "  " << t.step;
    for (const auto& v : t.outputs) {
      os << "  " << v.name << "=" << v.value << (v.unit.empty() ? "" : " " + v.unit);
    }
    if (!t.selected.empty()) os << "  -> " << t.selected;
    if (!t.note.empty()) os << "  (" << t.note << ")";
    os << "\n";
  }
  return os.str();
}

std::string comparison_text(const propsizer::ComparisonReport& c) {
  std::ostringstream os;
  os << "catalog: " << c.catalog_sizes[0] << " propellers, " << c.catalog_sizes[1]
     << " motors, " << c.catalog_sizes[2] << " ESCs, " << c.catalog_sizes[3]
     << " batteries (" << c.combinations << " combinations)\n";
  os << std::left << std::setw(12) << "method" << std::setw(12) << "weight_N" << std::setw(14)
     << "endurance_min" << std::setw(12) << "time_ms" << "hover_evals\n";
  auto row = [&](const char* name, const propsizer::MethodOutcome& m) {
    os << std::setw(12) << name;
    if (m.ok) {
      os << std::setw(12) << fixed(m.weight_n, 3) << std::setw(14) << fixed(m.endurance_min, 2);
    } else {
      os << std::setw(26) << "infeasible";
    }
    os << std::setw(12) << fixed(m.wall_time_ms, 3) << m.evaluations << "\n";
    if (!m.ok) os << "  " << m.error << "\n";
  };
  row("analytical", c.analytical);
  row("brute_force", c.brute_force);
  os << "weight ratio: " << fixed(c.weight_ratio, 4) << "  time ratio: " << fixed(c.time_ratio, 1)
     << "\n";
  return os.str();
}

int report_error(const Error& e) {
  std::cerr << propsizer::error_to_json(e).dump(2) << "\n";
  switch (e.code()) {
    case ErrorCode::kDesignInfeasible:
    case ErrorCode::kSelectionInfeasible:
    case ErrorCode::kThrottleInfeasible:
    case ErrorCode::kBrownout:
      return kExitInfeasible;
    default:
      return kExitUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multicopter propulsion sizing"};
  app.require_subcommand(1);

  CommonFlags common;
  auto add_catalog = [&](CLI::App* cmd) {
    cmd->add_option("--catalog", common.catalog_dir,
                    "Catalog directory (default: $PROPSIZER_CATALOG_DIR)");
  };
  auto add_models = [&](CLI::App* cmd) {
    cmd->add_option("--models", common.models_path,
                    "Fitted model file (default: fit from the catalog)");
  };

  // optimize
  auto* opt_cmd = app.add_subcommand("optimize", "Size and select a propulsion system");
  double weight_n = 0.0, hover_n = 0.0, gamma = propsizer::kDefaultThrustRatio;
  double endurance = 0.0, altitude = 0.0, temp = propsizer::kDefaultTemperature;
  double other = propsizer::kDefaultOtherCurrent;
  int rotors = 0;
  auto* w_opt = opt_cmd->add_option("--weight-N", weight_n, "Total weight in newtons");
  auto* h_opt = opt_cmd->add_option("--hover-thrust-N", hover_n, "Hover thrust per propeller");
  w_opt->excludes(h_opt);
  opt_cmd->add_option("--rotors", rotors, "Number of propulsion units")->required();
  opt_cmd->add_option("--gamma", gamma, "Thrust ratio T_hover/T_max")->capture_default_str();
  opt_cmd->add_option("--endurance-min", endurance, "Hover endurance in minutes")->required();
  opt_cmd->add_option("--altitude-m", altitude, "Flight altitude")->capture_default_str();
  opt_cmd->add_option("--temp-c", temp, "Ambient temperature")->capture_default_str();
  opt_cmd->add_option("--other-current-A", other, "Current of other devices")
      ->capture_default_str();
  add_catalog(opt_cmd);
  add_models(opt_cmd);
  opt_cmd->add_option("--out", common.out_path, "Write the result here instead of stdout");
  opt_cmd->add_option("--format", common.format, "json or text")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  // evaluate
  auto* eval_cmd = app.add_subcommand("evaluate", "Evaluate a fully specified system");
  std::string system_path;
  std::optional<double> eval_hover, eval_altitude;
  eval_cmd->add_option("--system", system_path, "System JSON file")->required();
  eval_cmd->add_option("--hover-thrust-N", eval_hover, "Override hover thrust");
  eval_cmd->add_option("--altitude-m", eval_altitude, "Override altitude");
  add_catalog(eval_cmd);
  add_models(eval_cmd);
  eval_cmd->add_option("--out", common.out_path, "Output file");

  // fit
  auto* fit_cmd = app.add_subcommand("fit", "Fit catalog statistics");
  std::string fit_date;
  add_catalog(fit_cmd);
  fit_cmd->add_option("--out", common.out_path, "Model file to write");
  fit_cmd->add_option("--date", fit_date, "Fit date recorded in provenance (default: today)");

  // compare
  auto* cmp_cmd = app.add_subcommand("compare", "Analytical pipeline vs exhaustive search");
  std::string req_path;
  unsigned threads = 1;
  add_catalog(cmp_cmd);
  add_models(cmp_cmd);
  cmp_cmd->add_option("--requirements", req_path, "Requirements JSON file")->required();
  cmp_cmd->add_option("--threads", threads, "Brute-force worker threads")->capture_default_str();
  cmp_cmd->add_option("--out", common.out_path, "Output file");
  cmp_cmd->add_option("--format", common.format, "json or text")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  // import
  auto* imp_cmd = app.add_subcommand("import", "Convert a vendor CSV into a catalog class file");
  std::string imp_class, csv_path;
  imp_cmd->add_option("--class", imp_class, "propeller, motor, esc or battery")
      ->required()
      ->check(CLI::IsMember({"propeller", "motor", "esc", "battery"}));
  imp_cmd->add_option("--csv", csv_path, "CSV file with unit-suffixed headers")->required();
  imp_cmd->add_option("--out", common.out_path, "Class file to write");

  // serve
  auto* srv_cmd = app.add_subcommand("serve", "Run the HTTP service");
  std::string host = "127.0.0.1";
  int port = 8080;
  add_catalog(srv_cmd);
  add_models(srv_cmd);
  srv_cmd->add_option("--host", host, "Bind address")->capture_default_str();
  srv_cmd->add_option("--port", port, "Port")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*opt_cmd) {
      if (w_opt->count() == 0 && h_opt->count() == 0) {
        throw Error(ErrorCode::kInvalidInput, "one of --weight-N and --hover-thrust-N is required");
      }
      if (rotors < 1) throw Error(ErrorCode::kInvalidInput, "--rotors must be >= 1");
      propsizer::DesignRequirements req =
          w_opt->count() > 0
              ? propsizer::DesignRequirements::from_total_weight(weight_n, rotors, gamma,
                                                                 endurance, altitude)
              : propsizer::DesignRequirements::from_hover_thrust(hover_n, rotors, gamma,
                                                                 endurance, altitude);
      req.temperature_c = temp;
      req.other_current_a = other;
      req.validate();
      const propsizer::Catalog catalog = load(common);
      const propsizer::StatModels stat = models_for(common, catalog);
      const propsizer::DesignResult d = propsizer::optimize(req, catalog, stat);
      emit(common, common.format == "text" ? design_text(d)
                                           : propsizer::design_result_to_string(d));
      return kExitOk;
    }
    if (*eval_cmd) {
      const propsizer::Catalog catalog = load(common);
      const propsizer::StatModels stat = models_for(common, catalog);
      Json j = read_json_file(system_path);
      if (eval_hover) j["hover_thrust_n"] = *eval_hover;
      if (eval_altitude) j["altitude_m"] = *eval_altitude;
      const propsizer::Service service(catalog, stat);
      const propsizer::ServiceResponse r = service.evaluate(j.dump());
      if (r.status == 400) {
        std::cerr << r.body;
        return kExitUsage;
      }
      emit(common, r.body);
      return r.status == 200 ? kExitOk : kExitInfeasible;
    }
    if (*fit_cmd) {
      const propsizer::Catalog catalog = load(common);
      const propsizer::StatModels stat =
          propsizer::fit_stat_models(catalog, fit_date.empty() ? today() : fit_date);
      std::cerr << "G_WConst = " << stat.power_thrust.g_wconst << " N/W over "
                << stat.power_thrust.record_count << " motors; "
                << stat.voltage_tiers.tiers.size() << " voltage tiers\n";
      emit(common, propsizer::stat_models_to_json(stat).dump(2) + "\n");
      return kExitOk;
    }
    if (*cmp_cmd) {
      const propsizer::Catalog catalog = load(common);
      const propsizer::StatModels stat = models_for(common, catalog);
      const propsizer::DesignRequirements req =
          propsizer::requirements_from_json(read_json_file(req_path));
      propsizer::BruteForceOptions bf;
      bf.threads = threads;
      const propsizer::ComparisonReport c = propsizer::compare(req, catalog, stat, {}, bf);
      emit(common, common.format == "text" ? comparison_text(c)
                                           : propsizer::to_json(c).dump(2) + "\n");
      return kExitOk;
    }
    if (*imp_cmd) {
      const propsizer::ComponentClass cls = propsizer::component_class_from_string(imp_class);
      propsizer::Catalog catalog;
      propsizer::import_csv(csv_path, cls, catalog);
      for (const auto& d : catalog.rejects) {
        std::cerr << "warning: " << d.file << ":" << d.line << ": rejected '" << d.record_id
                  << "': " << d.message << "\n";
      }
      emit(common, propsizer::class_document(catalog, cls));
      return kExitOk;
    }
    if (*srv_cmd) {
      propsizer::Catalog catalog = load(common);
      propsizer::StatModels stat = models_for(common, catalog);
      const propsizer::Service service(std::move(catalog), std::move(stat));
      httplib::Server server;
      service.mount(server);
      std::cerr << "listening on " << host << ":" << port << "\n";
      if (!server.listen(host, port)) {
        std::cerr << "cannot bind " << host << ":" << port << "\n";
        return kExitUsage;
      }
      return kExitOk;
    }
  } catch (const Error& e) {
    return report_error(e);
  }
  return kExitUsage;
}
