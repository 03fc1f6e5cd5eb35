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


#include "propsizer/product_db.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "str_util.hpp"

namespace propsizer {
namespace {

using internal::str_cat;
using nlohmann::json;

[[noreturn]] void catalog_error(const std::string& what) {
  throw Error(ErrorCode::kCatalog, what);
}

[[noreturn]] void infeasible(const std::string& step,
                             const std::string& constraint,
                             const std::string& what) {
  throw Error(ErrorCode::kSelectionInfeasible, what, step, constraint);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) catalog_error(str_cat("cannot read ", path));
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Byte offsets of the objects directly inside the "records" array. Only used
// to give diagnostics a line number, so it tolerates anything the JSON
// parser already accepted.
std::vector<std::size_t> record_offsets(const std::string& text) {
  std::vector<std::size_t> out;
  const std::size_t key = text.find("\"records\"");
  if (key == std::string::npos) return out;
  std::size_t i = text.find('[', key);
  if (i == std::string::npos) return out;
  int depth = 0;
  bool in_string = false;
  for (++i; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      if (c == '\\') {
        ++i;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '{' || c == '[') {
      if (depth == 0 && c == '{') out.push_back(i);
      ++depth;
    } else if (c == '}' || c == ']') {
      if (depth == 0) break;
      --depth;
    }
  }
  return out;
}

int line_of(const std::string& text, std::size_t offset) {
  return 1 + static_cast<int>(std::count(text.begin(),
                                         text.begin() + static_cast<long>(offset),
                                         '\n'));
}

double number(const json& params, const char* key) {
  auto it = params.find(key);
  if (it == params.end()) throw std::invalid_argument(str_cat("missing ", key));
  if (!it->is_number()) throw std::invalid_argument(str_cat(key, " is not a number"));
  return it->get<double>();
}

std::optional<double> optional_number(const json& params, const char* key) {
  auto it = params.find(key);
  if (it == params.end() || it->is_null()) return std::nullopt;
  if (!it->is_number()) throw std::invalid_argument(str_cat(key, " is not a number"));
  return it->get<double>();
}

int integer(const json& params, const char* key) {
  const double v = number(params, key);
  if (v != std::floor(v)) throw std::invalid_argument(str_cat(key, " must be an integer"));
  return static_cast<int>(v);
}

template <typename Params>
Product<Params> base_record(const json& rec) {
  Product<Params> p;
  if (!rec.is_object()) throw std::invalid_argument("record is not an object");
  auto id = rec.find("id");
  if (id == rec.end() || !id->is_string() || id->get<std::string>().empty()) {
    throw std::invalid_argument("missing id");
  }
  p.id = id->get<std::string>();
  if (!rec.contains("params") || !rec["params"].is_object()) {
    throw std::invalid_argument("missing params object");
  }
  p.params.weight_n = number(rec, "weight_N");
  if (auto s = rec.find("source"); s != rec.end() && s->is_string()) {
    p.source = s->get<std::string>();
  }
  p.price = optional_number(rec, "price");
  return p;
}

PropellerProduct parse_propeller(const json& rec) {
  auto p = base_record<PropellerParams>(rec);
  const json& q = rec["params"];
  p.params.diameter_m = number(q, "diameter_m");
  p.params.pitch_m = number(q, "pitch_m");
  p.params.blade_count = integer(q, "blade_count");
  p.params.validate();
  return p;
}

MotorProduct parse_motor(const json& rec) {
  auto p = base_record<MotorParams>(rec);
  const json& q = rec["params"];
  p.params.max_voltage_v = number(q, "max_voltage_V");
  p.params.max_current_a = number(q, "max_current_A");
  p.params.kv = number(q, "kv_rpm_per_V");
  p.params.no_load_current_a = number(q, "no_load_current_A");
  p.params.no_load_voltage_v =
      optional_number(q, "no_load_voltage_V").value_or(kDefaultNoLoadVoltage);
  p.params.resistance_ohm = number(q, "resistance_ohm");
  p.params.max_thrust_n = optional_number(q, "max_thrust_N");
  p.params.validate();
  motor_limits(p.params);
  return p;
}

EscProduct parse_esc(const json& rec) {
  auto p = base_record<EscParams>(rec);
  const json& q = rec["params"];
  p.params.max_voltage_v = number(q, "max_voltage_V");
  p.params.max_current_a = number(q, "max_current_A");
  p.params.resistance_ohm = number(q, "resistance_ohm");
  p.params.validate();
  return p;
}

BatteryProduct parse_battery(const json& rec) {
  auto p = base_record<BatteryParams>(rec);
  const json& q = rec["params"];
  const int cells = integer(q, "cells");
  if (cells < 1) throw std::invalid_argument("cells must be >= 1");
  p.params.voltage_v = units::cells_to_volts(cells);
  p.params.capacity_mah = number(q, "capacity_mAh");
  p.params.max_discharge_rate_c = number(q, "max_discharge_rate_C");
  p.params.resistance_ohm = number(q, "resistance_ohm");
  p.params.energy_density_wh_per_kg =
      optional_number(q, "energy_density_Wh_per_kg").value_or(kDefaultEnergyDensity);
  p.params.validate();
  return p;
}

template <typename P>
bool has_id(const std::vector<P>& v, const std::string& id) {
  return std::any_of(v.begin(), v.end(), [&](const P& p) { return p.id == id; });
}

template <typename P, typename Parse>
void ingest(const json& records, const std::string& text,
            const std::string& name, Parse parse, std::vector<P>& out,
            std::vector<Diagnostic>& rejects) {
  const std::vector<std::size_t> offsets = record_offsets(text);
  for (std::size_t i = 0; i < records.size(); ++i) {
    Diagnostic diag;
    diag.file = name;
    diag.line = i < offsets.size() ? line_of(text, offsets[i]) : 0;
    const json& rec = records[i];
    if (rec.is_object() && rec.contains("id") && rec["id"].is_string()) {
      diag.record_id = rec["id"].get<std::string>();
    }
    try {
      P p = parse(rec);
      if (has_id(out, p.id)) {
        diag.message = "duplicate identifier";
        rejects.push_back(diag);
        continue;
      }
      out.push_back(std::move(p));
    } catch (const Error& e) {
      diag.message = e.what();
      rejects.push_back(diag);
    } catch (const std::exception& e) {
      diag.message = e.what();
      rejects.push_back(diag);
    }
  }
}

json params_json(const PropellerParams& p) {
  return {{"diameter_m", p.diameter_m},
          {"pitch_m", p.pitch_m},
          {"blade_count", p.blade_count}};
}

json params_json(const MotorParams& p) {
  json j = {{"max_voltage_V", p.max_voltage_v},
            {"max_current_A", p.max_current_a},
            {"kv_rpm_per_V", p.kv},
            {"no_load_current_A", p.no_load_current_a},
            {"no_load_voltage_V", p.no_load_voltage_v},
            {"resistance_ohm", p.resistance_ohm}};
  if (p.max_thrust_n) j["max_thrust_N"] = *p.max_thrust_n;
  return j;
}

json params_json(const EscParams& p) {
  return {{"max_voltage_V", p.max_voltage_v},
          {"max_current_A", p.max_current_a},
          {"resistance_ohm", p.resistance_ohm}};
}

json params_json(const BatteryParams& p) {
  return {{"cells", p.cells()},
          {"capacity_mAh", p.capacity_mah},
          {"max_discharge_rate_C", p.max_discharge_rate_c},
          {"resistance_ohm", p.resistance_ohm},
          {"energy_density_Wh_per_kg", p.energy_density_wh_per_kg}};
}

template <typename P>
json canonical_records(const std::vector<P>& v) {
  std::vector<const P*> sorted;
  for (const auto& p : v) sorted.push_back(&p);
  std::sort(sorted.begin(), sorted.end(),
            [](const P* a, const P* b) { return a->id < b->id; });
  json out = json::array();
  for (const P* p : sorted) {
    json r = {{"id", p->id},
              {"params", params_json(p->params)},
              {"weight_N", p->weight_n()},
              {"source", p->source}};
    if (p->price) r["price"] = *p->price;
    out.push_back(std::move(r));
  }
  return out;
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr) catalog_error("cannot allocate digest context");
  const bool ok = EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) == 1 &&
                  EVP_DigestUpdate(ctx, data.data(), data.size()) == 1 &&
                  EVP_DigestFinal_ex(ctx, digest, &len) == 1;
  EVP_MD_CTX_free(ctx);
  if (!ok) catalog_error("sha256 failed");
  static const char* kHex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

// ---- CSV ----

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

struct CsvRow {
  std::map<std::string, std::string> cells;

  bool has(const std::string& k) const {
    auto it = cells.find(k);
    return it != cells.end() && !it->second.empty();
  }
  double num(const std::string& k) const {
    const std::string& s = cells.at(k);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) {
      throw std::invalid_argument(str_cat(k, " is not a number: '", s, "'"));
    }
    return v;
  }
};

// Returns the value of the first present column among `alts`, converted to
// the canonical unit with the paired scale. Missing columns throw unless
// `required` is false.
std::optional<double> pick(const CsvRow& row,
                           std::initializer_list<std::pair<const char*, double>> alts,
                           bool required = true) {
  for (const auto& [col, scale] : alts) {
    if (row.has(col)) return row.num(col) * scale;
  }
  if (required) {
    std::string names;
    for (const auto& alt : alts) names += str_cat(names.empty() ? "" : "|", alt.first);
    throw std::invalid_argument(str_cat("missing column ", names));
  }
  return std::nullopt;
}

json csv_row_to_record(const CsvRow& row, ComponentClass cls) {
  json rec;
  if (!row.has("id")) throw std::invalid_argument("missing id");
  rec["id"] = row.cells.at("id");
  rec["source"] = row.has("source") ? row.cells.at("source") : "csv import";
  if (auto price = pick(row, {{"price", 1.0}}, false)) rec["price"] = *price;
  rec["weight_N"] = *pick(row, {{"weight_N", 1.0},
                                {"weight_g", units::kGravity / 1000.0}});
  json& q = rec["params"];
  q = json::object();
  const double volts_per_cell = units::kVoltsPerCell;
  switch (cls) {
    case ComponentClass::kPropeller:
      q["diameter_m"] = *pick(row, {{"diameter_m", 1.0}, {"diameter_in", units::kInchToMeter}});
      q["pitch_m"] = *pick(row, {{"pitch_m", 1.0}, {"pitch_in", units::kInchToMeter}});
      q["blade_count"] = *pick(row, {{"blade_count", 1.0}});
      break;
    case ComponentClass::kMotor:
      q["max_voltage_V"] = *pick(row, {{"max_voltage_V", 1.0}, {"max_cells_S", volts_per_cell}});
      q["max_current_A"] = *pick(row, {{"max_current_A", 1.0}});
      q["kv_rpm_per_V"] = *pick(row, {{"kv_rpm_per_V", 1.0}});
      q["no_load_current_A"] = *pick(row, {{"no_load_current_A", 1.0}});
      if (auto u0 = pick(row, {{"no_load_voltage_V", 1.0}}, false)) q["no_load_voltage_V"] = *u0;
      q["resistance_ohm"] = *pick(row, {{"resistance_ohm", 1.0}, {"resistance_mohm", 1e-3}});
      if (auto t = pick(row, {{"max_thrust_N", 1.0}, {"max_thrust_g", units::kGravity / 1000.0}}, false)) {
        q["max_thrust_N"] = *t;
      }
      break;
    case ComponentClass::kEsc:
      q["max_voltage_V"] = *pick(row, {{"max_voltage_V", 1.0}, {"max_cells_S", volts_per_cell}});
      q["max_current_A"] = *pick(row, {{"max_current_A", 1.0}});
      q["resistance_ohm"] = *pick(row, {{"resistance_ohm", 1.0}, {"resistance_mohm", 1e-3}});
      break;
    case ComponentClass::kBattery:
      q["cells"] = *pick(row, {{"cells_S", 1.0}, {"voltage_V", 1.0 / volts_per_cell}});
      q["capacity_mAh"] = *pick(row, {{"capacity_mAh", 1.0}, {"capacity_Ah", 1000.0}});
      q["max_discharge_rate_C"] = *pick(row, {{"max_discharge_rate_C", 1.0}});
      q["resistance_ohm"] = *pick(row, {{"resistance_ohm", 1.0}, {"resistance_mohm", 1e-3}});
      if (auto rho = pick(row, {{"energy_density_Wh_per_kg", 1.0}}, false)) {
        q["energy_density_Wh_per_kg"] = *rho;
      }
      break;
  }
  return rec;
}

template <typename P, typename Parse>
void ingest_csv(const std::string& text, const std::string& name,
                ComponentClass cls, Parse parse, std::vector<P>& out,
                std::vector<Diagnostic>& rejects) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> header;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r" || line[0] == '#') continue;
    std::vector<std::string> fields = split_csv_line(line);
    if (header.empty()) {
      header = std::move(fields);
      continue;
    }
    Diagnostic diag;
    diag.file = name;
    diag.line = lineno;
    try {
      if (fields.size() != header.size()) {
        throw std::invalid_argument(str_cat("expected ", header.size(),
                                            " fields, got ", fields.size()));
      }
      CsvRow row;
      for (std::size_t i = 0; i < header.size(); ++i) row.cells[header[i]] = fields[i];
      if (row.has("id")) diag.record_id = row.cells["id"];
      P p = parse(csv_row_to_record(row, cls));
      if (has_id(out, p.id)) {
        diag.message = "duplicate identifier";
        rejects.push_back(diag);
        continue;
      }
      out.push_back(std::move(p));
    } catch (const std::exception& e) {
      diag.message = e.what();
      rejects.push_back(diag);
    }
  }
  if (header.empty()) catalog_error(str_cat(name, ": empty CSV"));
}

bool within_band(double value, double target, double band) {
  return std::abs(value - target) <= band * target;
}

}  // namespace

std::string_view to_string(ComponentClass c) {
  switch (c) {
    case ComponentClass::kPropeller:
      return "propeller";
    case ComponentClass::kMotor:
      return "motor";
    case ComponentClass::kEsc:
      return "esc";
    case ComponentClass::kBattery:
      return "battery";
  }
  return "unknown";
}

ComponentClass component_class_from_string(std::string_view s) {
  if (s == "propeller") return ComponentClass::kPropeller;
  if (s == "motor") return ComponentClass::kMotor;
  if (s == "esc") return ComponentClass::kEsc;
  if (s == "battery") return ComponentClass::kBattery;
  catalog_error(str_cat("unknown component class '", s, "'"));
}

std::string Catalog::content_hash() const {
  json doc = {{"propeller", canonical_records(propellers)},
              {"motor", canonical_records(motors)},
              {"esc", canonical_records(escs)},
              {"battery", canonical_records(batteries)}};
  return sha256_hex(doc.dump());
}

std::string class_document(const Catalog& catalog, ComponentClass cls) {
  json records;
  switch (cls) {
    case ComponentClass::kPropeller:
      records = canonical_records(catalog.propellers);
      break;
    case ComponentClass::kMotor:
      records = canonical_records(catalog.motors);
      break;
    case ComponentClass::kEsc:
      records = canonical_records(catalog.escs);
      break;
    case ComponentClass::kBattery:
      records = canonical_records(catalog.batteries);
      break;
  }
  const json doc = {{"schema_version", kSchemaVersion},
                    {"class", std::string(to_string(cls))},
                    {"records", records}};
  return doc.dump(2) + "\n";
}

void parse_catalog_text(const std::string& text, const std::string& name,
                        Catalog& catalog) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    catalog_error(str_cat(name, ": ", e.what()));
  }
  if (!doc.is_object()) catalog_error(str_cat(name, ": top level must be an object"));
  if (!doc.contains("schema_version") || !doc["schema_version"].is_number_integer() ||
      doc["schema_version"].get<int>() != kSchemaVersion) {
    catalog_error(str_cat(name, ": unsupported schema_version (expected ",
                          kSchemaVersion, ")"));
  }
  if (!doc.contains("class") || !doc["class"].is_string()) {
    catalog_error(str_cat(name, ": missing class"));
  }
  if (!doc.contains("records") || !doc["records"].is_array()) {
    catalog_error(str_cat(name, ": missing records array"));
  }
  const json& records = doc["records"];
  switch (component_class_from_string(doc["class"].get<std::string>())) {
    case ComponentClass::kPropeller:
      ingest(records, text, name, parse_propeller, catalog.propellers, catalog.rejects);
      break;
    case ComponentClass::kMotor:
      ingest(records, text, name, parse_motor, catalog.motors, catalog.rejects);
      break;
    case ComponentClass::kEsc:
      ingest(records, text, name, parse_esc, catalog.escs, catalog.rejects);
      break;
    case ComponentClass::kBattery:
      ingest(records, text, name, parse_battery, catalog.batteries, catalog.rejects);
      break;
  }
}

void load_catalog_file(const std::string& path, Catalog& catalog) {
  parse_catalog_text(read_file(path), path, catalog);
}

Catalog load_catalog(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) catalog_error(str_cat("catalog directory not found: ", dir));
  Catalog catalog;
  for (const char* file : {"propellers.json", "motors.json", "escs.json", "batteries.json"}) {
    load_catalog_file((fs::path(dir) / file).string(), catalog);
  }
  return catalog;
}

void import_csv_text(const std::string& text, const std::string& name,
                     ComponentClass cls, Catalog& catalog) {
  switch (cls) {
    case ComponentClass::kPropeller:
      ingest_csv(text, name, cls, parse_propeller, catalog.propellers, catalog.rejects);
      break;
    case ComponentClass::kMotor:
      ingest_csv(text, name, cls, parse_motor, catalog.motors, catalog.rejects);
      break;
    case ComponentClass::kEsc:
      ingest_csv(text, name, cls, parse_esc, catalog.escs, catalog.rejects);
      break;
    case ComponentClass::kBattery:
      ingest_csv(text, name, cls, parse_battery, catalog.batteries, catalog.rejects);
      break;
  }
}

void import_csv(const std::string& path, ComponentClass cls, Catalog& catalog) {
  import_csv_text(read_file(path), path, cls, catalog);
}

StatModels fit_stat_models(const Catalog& catalog, const std::string& fit_date) {
  std::vector<PowerThrustPoint> power;
  std::vector<VoltageThrustPoint> tiers;
  std::vector<WeightSample> motor_w;
  for (const auto& m : catalog.motors) {
    if (!m.params.max_thrust_n) continue;
    power.push_back({m.params.max_voltage_v * m.params.max_current_a, *m.params.max_thrust_n});
    tiers.push_back({m.params.max_voltage_v, *m.params.max_thrust_n});
    motor_w.push_back({m.params.max_voltage_v, *m.params.max_thrust_n, m.weight_n()});
  }
  StatModels out;
  out.power_thrust = fit_power_thrust(power);
  out.voltage_tiers = fit_voltage_tiers(tiers);
  std::vector<WeightSample> prop_w;
  for (const auto& p : catalog.propellers) {
    prop_w.push_back({static_cast<double>(p.params.blade_count), p.params.diameter_m, p.weight_n()});
  }
  std::vector<WeightSample> esc_w;
  for (const auto& e : catalog.escs) {
    esc_w.push_back({e.params.max_voltage_v, e.params.max_current_a, e.weight_n()});
  }
  constexpr std::size_t kMinWeightSamples = 5;
  if (prop_w.size() >= kMinWeightSamples) out.weight_models.propeller = fit_power_law(prop_w);
  if (motor_w.size() >= kMinWeightSamples) out.weight_models.motor = fit_power_law(motor_w);
  if (esc_w.size() >= kMinWeightSamples) out.weight_models.esc = fit_power_law(esc_w);
  out.weight_models.k_c = kDefaultCorrection;
  out.provenance.catalog_hash = catalog.content_hash();
  out.provenance.fit_date = fit_date;
  return out;
}

// ---- selection ----

std::string BatteryPack::label() const {
  std::string out = base.id;
  if (series > 1) out += str_cat(" x", series, " series");
  if (parallel > 1) out += str_cat(" x", parallel, " parallel");
  return out;
}

BatteryPack compose_pack(const BatteryProduct& base, int series, int parallel) {
  if (series < 1 || parallel < 1) {
    throw Error(ErrorCode::kDomain, "series and parallel counts must be >= 1");
  }
  BatteryPack pack;
  pack.base = base;
  pack.series = series;
  pack.parallel = parallel;
  pack.params = base.params;
  pack.params.voltage_v = base.params.voltage_v * series;
  pack.params.capacity_mah = base.params.capacity_mah * parallel;
  pack.params.resistance_ohm = base.params.resistance_ohm * series / parallel;
  pack.params.weight_n = base.weight_n() * series * parallel;
  return pack;
}

const MotorProduct& select_motor(const MotorTarget& target,
                                 const std::vector<MotorProduct>& motors) {
  const std::string step = "step4_motor_selection";
  if (motors.empty()) infeasible(step, "catalog", "motor catalog is empty");
  const MotorProduct* best = nullptr;
  bool any_voltage = false;
  auto key = [&](const MotorProduct& m) {
    return std::make_tuple(m.params.max_voltage_v, std::abs(m.params.kv - target.kv),
                           m.params.max_current_a, m.params.resistance_ohm,
                           m.params.no_load_current_a, m.weight_n(), std::string_view(m.id));
  };
  for (const auto& m : motors) {
    if (m.params.max_voltage_v < target.max_voltage_v) continue;
    any_voltage = true;
    if (m.params.max_current_a < target.max_current_a) continue;
    if (best == nullptr || key(m) < key(*best)) best = &m;
  }
  if (best == nullptr) {
    if (!any_voltage) {
      infeasible(step, "max_voltage",
                 str_cat("no motor with U_mMax >= ", target.max_voltage_v, " V"));
    }
    infeasible(step, "max_current",
               str_cat("no motor with U_mMax >= ", target.max_voltage_v,
                       " V and I_mMax >= ", target.max_current_a, " A"));
  }
  return *best;
}

const PropellerProduct& select_propeller(
    const PropellerTarget& target, const std::vector<PropellerProduct>& props) {
  const std::string step = "step6_propeller_selection";
  if (props.empty()) infeasible(step, "catalog", "propeller catalog is empty");
  const PropellerProduct* best = nullptr;
  bool any_blades = false;
  auto key = [&](const PropellerProduct& p) {
    const double phi = p.params.pitch_angle();
    return std::make_tuple(!within_band(phi, target.pitch_angle, kPitchBand),
                           -p.params.diameter_m, std::abs(phi - target.pitch_angle),
                           p.weight_n(), std::string_view(p.id));
  };
  for (const auto& p : props) {
    if (p.params.blade_count != target.blade_count) continue;
    any_blades = true;
    if (p.params.diameter_m > target.diameter_m) continue;
    if (best == nullptr || key(p) < key(*best)) best = &p;
  }
  if (best == nullptr) {
    if (!any_blades) {
      infeasible(step, "blade_count",
                 str_cat("no propeller with ", target.blade_count, " blades"));
    }
    infeasible(step, "diameter",
               str_cat("no ", target.blade_count, "-blade propeller with D <= ",
                       target.diameter_m, " m"));
  }
  return *best;
}

const EscProduct& select_esc(const EscTarget& target,
                             const std::vector<EscProduct>& escs) {
  const std::string step = "step9_esc_selection";
  if (escs.empty()) infeasible(step, "catalog", "ESC catalog is empty");
  const EscProduct* best = nullptr;
  bool any_voltage = false;
  auto key = [](const EscProduct& e) {
    return std::make_tuple(e.params.max_voltage_v, e.params.max_current_a,
                           e.params.resistance_ohm, e.weight_n(), std::string_view(e.id));
  };
  for (const auto& e : escs) {
    if (e.params.max_voltage_v < target.max_voltage_v) continue;
    any_voltage = true;
    if (e.params.max_current_a < target.max_current_a) continue;
    if (best == nullptr || key(e) < key(*best)) best = &e;
  }
  if (best == nullptr) {
    if (!any_voltage) {
      infeasible(step, "max_voltage",
                 str_cat("no ESC with U_eMax >= ", target.max_voltage_v, " V"));
    }
    infeasible(step, "max_current",
               str_cat("no ESC with U_eMax >= ", target.max_voltage_v,
                       " V and I_eMax >= ", target.max_current_a, " A"));
  }
  return *best;
}

std::vector<BatteryPack> enumerate_packs(
    const std::vector<BatteryProduct>& batteries, const PackLimits& limits) {
  std::vector<BatteryPack> out;
  for (const auto& b : batteries) {
    for (int s = 1; s <= limits.max_series; ++s) {
      for (int p = 1; p <= limits.max_parallel; ++p) {
        out.push_back(compose_pack(b, s, p));
      }
    }
  }
  return out;
}

BatteryPack select_battery(const BatteryTarget& target,
                           const std::vector<BatteryProduct>& batteries,
                           const PackLimits& limits) {
  const std::string step = "step12_battery_selection";
  if (batteries.empty()) infeasible(step, "catalog", "battery catalog is empty");
  std::optional<BatteryPack> best;
  bool voltage_ok = false;
  bool capacity_ok = false;
  bool rate_ok = false;
  double nearest_voltage = 0.0;
  auto key = [](const BatteryPack& p) {
    return std::make_tuple(p.params.weight_n.value_or(0.0), p.units(),
                           std::string_view(p.base.id), p.series, p.parallel);
  };
  for (const auto& b : batteries) {
    for (int s = 1; s <= limits.max_series; ++s) {
      const double v = b.params.voltage_v * s;
      if (std::abs(v - target.voltage_v) > 1e-9) {
        if (nearest_voltage == 0.0 ||
            std::abs(v - target.voltage_v) < std::abs(nearest_voltage - target.voltage_v)) {
          nearest_voltage = v;
        }
        continue;
      }
      voltage_ok = true;
      for (int p = 1; p <= limits.max_parallel; ++p) {
        BatteryPack pack = compose_pack(b, s, p);
        if (pack.params.capacity_mah < target.capacity_mah) continue;
        capacity_ok = true;
        if (pack.params.max_discharge_rate_c < target.max_discharge_rate_c) continue;
        rate_ok = true;
        if (pack.params.max_discharge_current_a() < target.min_discharge_current_a) continue;
        if (!best || key(pack) < key(*best)) best = std::move(pack);
      }
    }
  }
  if (!best) {
    if (!voltage_ok) {
      infeasible(step, "battery_voltage",
                 str_cat("no pack composition reaches ", target.voltage_v,
                         " V; nearest is ", nearest_voltage, " V"));
    }
    if (!capacity_ok) {
      infeasible(step, "capacity",
                 str_cat("no ", target.voltage_v, " V pack reaches ",
                         target.capacity_mah, " mAh"));
    }
    if (!rate_ok) {
      infeasible(step, "discharge_rate",
                 str_cat("no pack with capacity >= ", target.capacity_mah,
                         " mAh reaches ", target.max_discharge_rate_c, " C"));
    }
    infeasible(step, "discharge_current",
               str_cat("no pack supplies ", target.min_discharge_current_a, " A"));
  }
  return *best;
}

}  // namespace propsizer
