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

#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <thread>

#include "httplib.h"
#include "propsizer/json_io.hpp"
#include "test_support.hpp"

namespace propsizer {
namespace {

using testing::bundled_catalog;
using testing::bundled_models;

const Service& service() {
  static const Service s(bundled_catalog(), bundled_models());
  return s;
}

constexpr const char* kReferenceBody =
    R"({"total_weight_n": 196, "rotor_count": 4, "thrust_ratio": 0.5,
        "endurance_min": 17, "altitude_m": 50})";

constexpr const char* kEvaluateBody = R"({
    "propeller": "T-MOTOR 29x9.5CF 2-blade", "motor": "T-MOTOR U11 KV90",
    "esc": "T-MOTOR FLAME 60A HV",
    "battery": {"id": "TATTU 6S 15C 16000mAh", "series": 2},
    "rotor_count": 4, "hover_thrust_n": 49, "altitude_m": 50})";

TEST(ServiceTest, OptimizeOk) {
  const ServiceResponse r = service().optimize(kReferenceBody);
  ASSERT_EQ(r.status, 200) << r.body;
  const Json j = Json::parse(r.body);
  EXPECT_EQ(j["products"]["motor"]["id"], "T-MOTOR U11 KV90");
  EXPECT_EQ(r.body, design_result_to_string(optimize(testing::reference_requirements(),
                                                     bundled_catalog(), bundled_models())));
}

TEST(ServiceTest, OptimizeMalformed) {
  EXPECT_EQ(service().optimize("{not json").status, 400);
  const ServiceResponse r = service().optimize(
      R"({"total_weight_n": 196, "rotor_count": 4, "thrust_ratio": 1.5, "endurance_min": 17})");
  EXPECT_EQ(r.status, 400);
  EXPECT_EQ(Json::parse(r.body)["error"]["code"], "invalid_input");
}

TEST(ServiceTest, OptimizeInfeasible) {
  const ServiceResponse r = service().optimize(
      R"({"total_weight_n": 196, "rotor_count": 4, "endurance_min": 500})");
  EXPECT_EQ(r.status, 422);
  const Json j = Json::parse(r.body);
  EXPECT_EQ(j["error"]["code"], "design_infeasible");
  EXPECT_FALSE(j["error"]["step"].get<std::string>().empty());
}

TEST(ServiceTest, Evaluate) {
  const ServiceResponse r = service().evaluate(kEvaluateBody);
  ASSERT_EQ(r.status, 200) << r.body;
  const Json j = Json::parse(r.body);
  EXPECT_TRUE(j["report"]["hover_feasible"].get<bool>());
  EXPECT_DOUBLE_EQ(j["max_thrust_n"].get<double>(), 98.0);
  EXPECT_GT(j["report"]["endurance_min"].get<double>(), 0.0);
}

TEST(ServiceTest, EvaluateInfeasibleHover) {
  Json j = Json::parse(kEvaluateBody);
  j["hover_thrust_n"] = 150.0;
  const ServiceResponse r = service().evaluate(j.dump());
  EXPECT_EQ(r.status, 422);
  EXPECT_FALSE(Json::parse(r.body)["report"]["hover_feasible"].get<bool>());
}

TEST(ServiceTest, EvaluateMalformed) {
  Json j = Json::parse(kEvaluateBody);
  j.erase("hover_thrust_n");
  EXPECT_EQ(service().evaluate(j.dump()).status, 400);
  j = Json::parse(kEvaluateBody);
  j["motor"] = "UNKNOWN";
  EXPECT_EQ(service().evaluate(j.dump()).status, 400);
}

TEST(ServiceTest, CatalogAndHealth) {
  const ServiceResponse c = service().catalog();
  EXPECT_EQ(c.status, 200);
  EXPECT_EQ(Json::parse(c.body)["content_hash"], bundled_catalog().content_hash());
  const ServiceResponse h = service().health();
  EXPECT_EQ(h.status, 200);
  EXPECT_EQ(h.body, "ok");
}

// Runs the handlers behind a real socket.
class HttpServiceTest : public ::testing::Test {
 protected:
  void SetUp() override {
    service().mount(server_);
    port_ = server_.bind_to_any_port("127.0.0.1");
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  void TearDown() override {
    server_.stop();
    if (thread_.joinable()) thread_.join();
  }

  httplib::Client client() {
    httplib::Client c("127.0.0.1", port_);
    c.set_read_timeout(std::chrono::seconds(30));
    return c;
  }

  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

TEST_F(HttpServiceTest, Health) {
  auto res = client().Get("/api/health");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->body, "ok");
}

TEST_F(HttpServiceTest, OptimizeMatchesLibrary) {
  auto res = client().Post("/api/optimize", kReferenceBody, "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->get_header_value("Content-Type"), "application/json");
  EXPECT_EQ(res->body, service().optimize(kReferenceBody).body);
}

TEST_F(HttpServiceTest, StatusCodes) {
  auto bad = client().Post(
      "/api/optimize",
      R"({"total_weight_n": 196, "rotor_count": 4, "thrust_ratio": 1.5, "endurance_min": 17})",
      "application/json");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);
  auto infeasible = client().Post(
      "/api/optimize", R"({"total_weight_n": 196, "rotor_count": 4, "endurance_min": 500})",
      "application/json");
  ASSERT_TRUE(infeasible);
  EXPECT_EQ(infeasible->status, 422);
  auto missing = client().Get("/api/nothing");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);
}

TEST_F(HttpServiceTest, MedianOptimizeLatency) {
  httplib::Client c = client();
  std::vector<double> ms;
  for (int i = 0; i < 21; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    auto res = c.Post("/api/optimize", kReferenceBody, "application/json");
    ms.push_back(
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
    ASSERT_TRUE(res);
    ASSERT_EQ(res->status, 200);
  }
  std::nth_element(ms.begin(), ms.begin() + 10, ms.end());
  EXPECT_LE(ms[10], 30.0);
}

TEST_F(HttpServiceTest, ConcurrentRequestsAgree) {
  const std::string expected = service().optimize(kReferenceBody).body;
  std::vector<std::thread> workers;
  std::vector<std::string> bodies(8);
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    workers.emplace_back([&, i] {
      auto res = client().Post("/api/optimize", kReferenceBody, "application/json");
      if (res) bodies[i] = res->body;
    });
  }
  for (auto& w : workers) w.join();
  for (const auto& b : bodies) EXPECT_EQ(b, expected);
}

}  // namespace
}  // namespace propsizer
