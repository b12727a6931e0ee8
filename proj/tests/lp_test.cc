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


#include "nilsolv/lp.h"

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "nilsolv/errors.h"
#include "test_support.h"

namespace nilsolv {
namespace {

using testing::frac;
using testing::random_rational;

Matrix<Rational> random_system(std::mt19937_64& rng, int rows, int cols) {
  Matrix<Rational> a(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a(i, j) = random_rational(rng, -3, 3, 3);
  return a;
}

TEST(Feasibility, FeasibleByConstruction) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix<Rational> a = random_system(rng, 4, 7);
    std::vector<Rational> x(7), b(4, Rational(0));
    for (auto& v : x) v = abs(random_rational(rng, 0, 2));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 7; ++j) b[i] += a(i, j) * x[j];
    const FeasibilityResult r = solve_feasibility(a, b);
    ASSERT_TRUE(r.feasible);
    EXPECT_TRUE(verify_primal(a, b, r.x));
  }
}

TEST(Feasibility, EveryOutcomeCarriesAWitness) {
  std::mt19937_64 rng(2);
  int infeasible = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Matrix<Rational> a = random_system(rng, 3, 4);
    std::vector<Rational> b(3);
    for (auto& v : b) v = random_rational(rng, -3, 3);
    const FeasibilityResult r = solve_feasibility(a, b);
    if (r.feasible) {
      EXPECT_TRUE(verify_primal(a, b, r.x));
    } else {
      ++infeasible;
      EXPECT_TRUE(verify_farkas(a, b, r.y));
    }
  }
  EXPECT_GT(infeasible, 0);
}

TEST(Feasibility, SimpleInfeasible) {
  // x1 + x2 = -1 has no nonnegative solution; y = (-1) separates.
  Matrix<Rational> a(1, 2);
  a(0, 0) = 1;
  a(0, 1) = 1;
  const FeasibilityResult r = solve_feasibility(a, {Rational(-1)});
  ASSERT_FALSE(r.feasible);
  EXPECT_TRUE(verify_farkas(a, {Rational(-1)}, r.y));
  EXPECT_FALSE(verify_farkas(a, {Rational(-1)}, {Rational(1)}));
}

TEST(Feasibility, DegenerateCyclingExample) {
  // Beale's degenerate system, equality form with slacks; Bland's rule must terminate.
  Matrix<Rational> a(3, 7);
  const Rational rows[3][7] = {{frac(1, 4), -8, -1, 9, 1, 0, 0},
                               {frac(1, 2), -12, frac(-1, 2), 3, 0, 1, 0},
                               {0, 0, 1, 0, 0, 0, 1}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 7; ++j) a(i, j) = rows[i][j];
  const std::vector<Rational> b{0, 0, 1};
  const FeasibilityResult r = solve_feasibility(a, b);
  ASSERT_TRUE(r.feasible);
  EXPECT_TRUE(verify_primal(a, b, r.x));
}

TEST(Feasibility, EmptyColumnsAndZeroRightSide) {
  Matrix<Rational> a(2, 0);
  EXPECT_TRUE(solve_feasibility(a, {Rational(0), Rational(0)}).feasible);
  EXPECT_FALSE(solve_feasibility(a, {Rational(1), Rational(0)}).feasible);
  EXPECT_THROW(solve_feasibility(a, {Rational(1)}), DomainError);
}

TEST(PrimitiveInteger, ScalesPositively) {
  const auto v = primitive_integer({frac(3, 4), frac(-1, 6), Rational(0)});
  EXPECT_EQ(v, (std::vector<Rational>{9, -2, 0}));
}

}  // namespace
}  // namespace nilsolv
