// Copyright 2026 The nilsolv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "nilsolv/numflow.h"

#include <gtest/gtest.h>

#include "nilsolv/errors.h"

namespace nilsolv {
namespace {

void expect_non_increasing(const FlowResult& r) {
  for (std::size_t i = 1; i < r.history.size(); ++i) EXPECT_LE(r.history[i], r.history[i - 1]) << i;
}

TEST(Flow, F24RecoversExactSolution) {
  const FlowResult r = residual_minimize(2, 4, FlowConfig{});
  EXPECT_LT(r.residual, 1e-8);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.params.at("xi"), 9.0 / 4, 1e-4);
  EXPECT_NEAR(r.params.at("sigma"), 9.0 / 2, 1e-4);
  EXPECT_NEAR(r.C, 1.0 / 16, 1e-4);
  EXPECT_LE(r.trace_identity_defect, 100 * FlowConfig{}.tolerance);
  expect_non_increasing(r);
}

TEST(Flow, F25MatchesQuadraticRoot) {
  const FlowResult r = residual_minimize(2, 5, FlowConfig{});
  EXPECT_LT(r.residual, 1e-8);
  EXPECT_NEAR(r.C, 0.09135, 1e-4);
  EXPECT_NEAR(r.params.at("xi"), 54 * r.C, 1e-6);
  EXPECT_LE(r.trace_identity_defect, 100 * FlowConfig{}.tolerance);
  expect_non_increasing(r);
}

TEST(Flow, StepThreeAgreesWithClosedForm) {
  for (int m = 2; m <= 5; ++m) {
    const FlowResult r = residual_minimize(m, 3, FlowConfig{});
    EXPECT_LT(r.residual, 1e-8) << m;
    EXPECT_NEAR(r.params.at("xi"), 3.0 * (m + 1) / (-m * m + 4 * m + 8), 1e-6) << m;
  }
}

TEST(Flow, F34StaysAwayFromZero) {
  FlowConfig cfg;
  cfg.restarts = 20;
  const FlowResult r = residual_minimize(3, 4, cfg);
  EXPECT_GT(r.residual, 1e-3);
  EXPECT_FALSE(r.converged);
  expect_non_increasing(r);
}

TEST(Flow, DeterministicForSeed) {
  FlowConfig cfg;
  cfg.seed = 42;
  cfg.restarts = 4;
  const FlowResult a = residual_minimize(2, 5, cfg);
  const FlowResult b = residual_minimize(2, 5, cfg);
  EXPECT_EQ(a.residual, b.residual);
  EXPECT_EQ(a.C, b.C);
  EXPECT_EQ(a.params, b.params);
  EXPECT_EQ(a.history, b.history);
  EXPECT_EQ(a.best_restart, b.best_restart);
}

TEST(Flow, ParametersStayPositive) {
  FlowConfig cfg;
  cfg.restarts = 3;
  cfg.max_iterations = 30;
  const FlowResult r = residual_minimize(2, 6, cfg);
  for (const auto& [name, value] : r.params)
    if (name.size() < 3 || name.substr(1, 2) != "12") EXPECT_GT(value, 0) << name;
  EXPECT_GT(r.C, 0);
  EXPECT_LE(r.iterations, 30);
  expect_non_increasing(r);
}

TEST(Flow, ConfigValidation) {
  FlowConfig cfg;
  cfg.restarts = 0;
  EXPECT_THROW(residual_minimize(2, 4, cfg), DomainError);
  cfg = FlowConfig{};
  cfg.tolerance = 0;
  EXPECT_THROW(cfg.validate(), DomainError);
  cfg = FlowConfig{};
  cfg.max_iterations = 0;
  EXPECT_THROW(cfg.validate(), DomainError);
  EXPECT_THROW(residual_minimize(3, 5, FlowConfig{}), UnsupportedCase);
}

}  // namespace
}  // namespace nilsolv
