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


// Request handlers of the JSON-over-HTTP service. Handlers are const and
// share the immutable catalog and models across concurrent requests.

#pragma once

#include <string>

#include "propsizer/optimizer.hpp"
#include "propsizer/product_db.hpp"
#include "propsizer/stat_models.hpp"

namespace httplib {
class Server;
}

namespace propsizer {

struct ServiceResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

class Service {
 public:
  Service(Catalog catalog, StatModels stat, OptimizerOptions options = {});

  // POST /api/optimize: 200 DesignResult, 422 infeasible, 400 malformed.
  ServiceResponse optimize(const std::string& body) const;
  // POST /api/evaluate: 200 report, 422 when hover is infeasible, 400
  // malformed.
  ServiceResponse evaluate(const std::string& body) const;
  // GET /api/catalog
  ServiceResponse catalog() const;
  // GET /api/health
  ServiceResponse health() const;

  void mount(httplib::Server& server) const;

  const Catalog& catalog_data() const { return catalog_; }
  const StatModels& stat_models() const { return stat_; }

 private:
  Catalog catalog_;
  StatModels stat_;
  OptimizerOptions options_;
  std::string catalog_body_;
};

}  // namespace propsizer
