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


#include "propsizer/service.hpp"

#include "httplib.h"
#include "propsizer/json_io.hpp"

namespace propsizer {
namespace {

ServiceResponse json_response(int status, const Json& j) {
  return {status, j.dump(2) + "\n", "application/json"};
}

ServiceResponse bad_request(const std::string& message) {
  return json_response(400, error_to_json(Error(ErrorCode::kInvalidInput, message)));
}

// Parses a request body; nullopt-like failure is signalled through `err`.
bool parse_body(const std::string& body, Json& out, ServiceResponse& err) {
  try {
    out = Json::parse(body);
    return true;
  } catch (const Json::parse_error& e) {
    err = bad_request(std::string("malformed JSON: ") + e.what());
    return false;
  }
}

void reply(httplib::Response& res, const ServiceResponse& r) {
  res.status = r.status;
  res.set_content(r.body, r.content_type);
}

}  // namespace

Service::Service(Catalog catalog, StatModels stat, OptimizerOptions options)
    : catalog_(std::move(catalog)),
      stat_(std::move(stat)),
      options_(std::move(options)),
      catalog_body_(catalog_to_json(catalog_).dump(2) + "\n") {}

ServiceResponse Service::optimize(const std::string& body) const {
  Json j;
  ServiceResponse err;
  if (!parse_body(body, j, err)) return err;
  DesignRequirements req;
  try {
    req = requirements_from_json(j);
  } catch (const Error& e) {
    return json_response(400, error_to_json(e));
  }
  try {
    return {200, design_result_to_string(propsizer::optimize(req, catalog_, stat_, options_)),
            "application/json"};
  } catch (const Error& e) {
    return json_response(422, error_to_json(e));
  }
}

ServiceResponse Service::evaluate(const std::string& body) const {
  Json j;
  ServiceResponse err;
  if (!parse_body(body, j, err)) return err;
  EvaluationRequest req;
  try {
    req = evaluation_request_from_json(j, catalog_);
  } catch (const Error& e) {
    return json_response(400, error_to_json(e));
  }
  if (!(req.hover_thrust_n > 0.0)) return bad_request("hover_thrust_n must be positive");
  const PerformanceReport report = propsizer::evaluate(
      req.system, req.hover_thrust_n, req.max_thrust(), &stat_.weight_models);
  Json out = {{"system", req.label},
              {"hover_thrust_n", req.hover_thrust_n},
              {"max_thrust_n", req.max_thrust()},
              {"report", to_json(report)}};
  return json_response(report.hover_feasible ? 200 : 422, out);
}

ServiceResponse Service::catalog() const { return {200, catalog_body_, "application/json"}; }

ServiceResponse Service::health() const { return {200, "ok", "text/plain"}; }

void Service::mount(httplib::Server& server) const {
  server.Post("/api/optimize", [this](const httplib::Request& req, httplib::Response& res) {
    reply(res, optimize(req.body));
  });
  server.Post("/api/evaluate", [this](const httplib::Request& req, httplib::Response& res) {
    reply(res, evaluate(req.body));
  });
  server.Get("/api/catalog", [this](const httplib::Request&, httplib::Response& res) {
    reply(res, catalog());
  });
  server.Get("/api/health", [this](const httplib::Request&, httplib::Response& res) {
    reply(res, health());
  });
  server.set_exception_handler(
      [](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        std::string what = "internal error";
        try {
          std::rethrow_exception(ep);
        } catch (const std::exception& e) {
          what = e.what();
        } catch (...) {
        }
        reply(res, json_response(500, {{"error", {{"code", "internal"}, {"message", what}}}}));
      });
}

}  // namespace propsizer
