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

#include <gtest/gtest.h>

#include <functional>

#include "propsizer/json_io.hpp"
#include "test_support.hpp"

namespace propsizer {
namespace {

using testing::bundled_catalog;
using testing::bundled_models;
using testing::reference_requirements;

Error error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "no error thrown";
  return Error(ErrorCode::kDomain, "none");
}

Catalog reference_singletons() {
  const Catalog& c = bundled_catalog();
  Catalog s;
  s.propellers = {testing::find_propeller(c, "T-MOTOR 29x9.5CF 2-blade")};
  s.motors = {testing::find_motor(c, "T-MOTOR U11 KV90")};
  s.escs = {testing::find_esc(c, "T-MOTOR FLAME 60A HV")};
  s.batteries = {testing::find_battery(c, "TATTU 6S 15C 16000mAh")};
  return s;
}

TEST(BruteForceTest, SingletonCatalogFeasible) {
  BruteForceStats stats;
  const DesignResult d = brute_force(reference_requirements(), reference_singletons(),
                                     bundled_models(), {}, &stats);
  EXPECT_EQ(stats.combinations, 1u);
  EXPECT_EQ(stats.pack_evaluations, 64u);
  EXPECT_EQ(d.motor.id, "T-MOTOR U11 KV90");
  EXPECT_EQ(d.battery.series, 2);
  EXPECT_FALSE(d.optimal.has_value());
  EXPECT_TRUE(d.performance.safe);
  EXPECT_GE(d.performance.endurance_min, 17.0);
}

TEST(BruteForceTest, SingletonCatalogInfeasible) {
  Catalog c = reference_singletons();
  c.propellers = {testing::find_propeller(bundled_catalog(), "T-MOTOR 30x10.5CF 2-blade")};
  const Error e = error_of([&] { brute_force(reference_requirements(), c, bundled_models()); });
  EXPECT_EQ(e.code(), ErrorCode::kDesignInfeasible);
  EXPECT_EQ(e.step(), "brute_force");
}

TEST(BruteForceTest, AbsurdEnduranceHasNoFeasibleSet) {
  DesignRequirements req = reference_requirements();
  req.endurance_min = 1000.0;
  EXPECT_EQ(error_of([&] { brute_force(req, reference_singletons(), bundled_models()); }).code(),
            ErrorCode::kDesignInfeasible);
}

TEST(BruteForceTest, CountsAreExact) {
  const testing::SyntheticCase sc = testing::make_synthetic_case(11, 4, bundled_models());
  BruteForceStats stats;
  try {
    brute_force(sc.requirements, sc.catalog, bundled_models(), {}, &stats);
  } catch (const Error&) {
  }
  EXPECT_EQ(stats.combinations, 256u);
  EXPECT_EQ(stats.pack_evaluations, 256u * 64u);
  EXPECT_LE(stats.feasible, stats.pack_evaluations);
}

TEST(BruteForceTest, CapRefusesLargeSearch) {
  BruteForceOptions o;
  o.max_combinations = 100;
  const Error e = error_of(
      [&] { brute_force(reference_requirements(), bundled_catalog(), bundled_models(), o); });
  EXPECT_EQ(e.code(), ErrorCode::kSearchTooLarge);
  EXPECT_NE(std::string(e.what()).find("13566"), std::string::npos);
}

TEST(BruteForceTest, LowerBoundOnAnalyticalDesign) {
  const DesignResult a = optimize(reference_requirements(), bundled_catalog(), bundled_models());
  const DesignResult b = brute_force(reference_requirements(), bundled_catalog(), bundled_models());
  ASSERT_TRUE(a.performance.system_weight_n && b.performance.system_weight_n);
  EXPECT_LE(*b.performance.system_weight_n, *a.performance.system_weight_n);
}

TEST(BruteForceTest, PartitioningDoesNotChangeTheResult) {
  const testing::SyntheticCase sc = testing::make_synthetic_case(5, 5, bundled_models());
  BruteForceOptions one;
  BruteForceOptions four;
  four.threads = 4;
  BruteForceStats s1, s4;
  const DesignResult a = brute_force(sc.requirements, sc.catalog, bundled_models(), one, &s1);
  const DesignResult b = brute_force(sc.requirements, sc.catalog, bundled_models(), four, &s4);
  EXPECT_EQ(design_result_to_string(a), design_result_to_string(b));
  EXPECT_EQ(s1.pack_evaluations, s4.pack_evaluations);
  EXPECT_EQ(s1.feasible, s4.feasible);
  EXPECT_EQ(s1.hover_evaluations, s4.hover_evaluations);
}

TEST(CompareTest, ReportsBothMethods) {
  const testing::SyntheticCase sc = testing::make_synthetic_case(3, 4, bundled_models());
  const ComparisonReport r = compare(sc.requirements, sc.catalog, bundled_models());
  ASSERT_TRUE(r.analytical.ok) << r.analytical.error;
  ASSERT_TRUE(r.brute_force.ok) << r.brute_force.error;
  EXPECT_EQ(r.combinations, 256u);
  EXPECT_EQ(r.analytical.evaluations, 2u);
  EXPECT_LE(r.brute_force.weight_n, r.analytical.weight_n);
  EXPECT_NEAR(r.weight_ratio, r.analytical.weight_n / r.brute_force.weight_n, 1e-12);
  EXPECT_GT(r.time_ratio, 0.0);
  for (std::size_t n : r.catalog_sizes) EXPECT_EQ(n, 4u);
}

TEST(CompareTest, FailedMethodReported) {
  DesignRequirements req = reference_requirements();
  req.endurance_min = 1000.0;
  const ComparisonReport r = compare(req, reference_singletons(), bundled_models());
  EXPECT_FALSE(r.analytical.ok);
  EXPECT_FALSE(r.brute_force.ok);
  EXPECT_FALSE(r.brute_force.error.empty());
  EXPECT_EQ(r.weight_ratio, 0.0);
}

TEST(SyntheticCaseTest, Deterministic) {
  const testing::SyntheticCase a = testing::make_synthetic_case(9, 5, bundled_models());
  const testing::SyntheticCase b = testing::make_synthetic_case(9, 5, bundled_models());
  EXPECT_EQ(a.catalog.content_hash(), b.catalog.content_hash());
  EXPECT_EQ(a.catalog.size(), 20u);
}

}  // namespace
}  // namespace propsizer
