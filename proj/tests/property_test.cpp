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


#include <gtest/gtest.h>

#include "property_checks.hpp"

namespace propsizer::testing {
namespace {

class PropertyTest : public ::testing::TestWithParam<std::string> {};

TEST_P(PropertyTest, HoldsOnAllCases) {
  const PropertyResult r = run_property(GetParam());
  EXPECT_EQ(r.cases, kPropertyCases);
  EXPECT_EQ(r.failures, 0) << r.first_failure;
}

INSTANTIATE_TEST_SUITE_P(Invariants, PropertyTest, ::testing::ValuesIn(property_names()),
                         [](const ::testing::TestParamInfo<std::string>& info) {
                           return info.param;
                         });

TEST(PropertyRunnerTest, SameSeedSameOutcome) {
  const PropertyResult a = run_property("hover_circuit_residuals", 7, 50);
  const PropertyResult b = run_property("hover_circuit_residuals", 7, 50);
  EXPECT_EQ(a.failures, b.failures);
  EXPECT_EQ(a.first_failure, b.first_failure);
}

TEST(PropertyRunnerTest, UnknownName) {
  EXPECT_THROW(run_property("no_such_property"), std::invalid_argument);
}

}  // namespace
}  // namespace propsizer::testing
