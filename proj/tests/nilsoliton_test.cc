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


#include "nilsolv/nilsoliton.h"

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "nilsolv/errors.h"
#include "test_support.h"

namespace nilsolv {
namespace {

using testing::frac;

Laurent var(Slot s, int power = 1) { return Laurent::variable(static_cast<int>(s), power); }

const Equation& equation(const EquationSystem& sys, const std::string& label,
                         EquationKind kind = EquationKind::kDiagonal) {
  const int idx = sys.find(label, kind);
  if (idx < 0) throw std::runtime_error("missing equation " + label);
  return sys.equations[idx];
}

std::vector<std::pair<int, Rational>> by_label(const EquationSystem& sys,
                                               const std::vector<std::pair<std::string, long>>& weights) {
  std::vector<std::pair<int, Rational>> out;
  for (const auto& [label, w] : weights) {
    int idx = sys.find(label);
    if (idx < 0) idx = sys.find(label, EquationKind::kBlockTrace);
    if (idx < 0) throw std::runtime_error("missing equation " + label);
    out.emplace_back(idx, Rational(w));
  }
  return out;
}

QuadraticNumber slot(const EinsteinSolution& s, Slot k) { return *s.slots[static_cast<int>(k)]; }

TEST(Assemble, F24DisplayedEquation) {
  const EquationSystem sys = assemble_equations(2, 4);
  const Equation& eq = equation(sys, "e1211");
  EXPECT_EQ(eq.degree, 4);
  EXPECT_EQ(eq.rhs_constant, 16);
  EXPECT_EQ(eq.gram, Laurent(Rational(1)));
  EXPECT_EQ(eq.lhs, var(Slot::kXi, -1) * var(Slot::kSigma) * frac(1, 2));
  EXPECT_EQ(sys.slots, (std::vector<Slot>{Slot::kXi, Slot::kSigma}));
}

TEST(Assemble, StepThreeBracketEquation) {
  for (int m = 2; m <= 5; ++m) {
    const EquationSystem sys = assemble_equations(m, 3);
    const Equation& eq = equation(sys, "e12");
    EXPECT_EQ(eq.rhs_constant, -m * m * m + 2 * m) << m;
    EXPECT_EQ(eq.lhs, Laurent(frac(1, 2)) - var(Slot::kXi) * frac(m + 1, 3)) << m;
  }
}

TEST(Assemble, F26TopDegreeEquation) {
  const EquationSystem sys = assemble_equations(2, 6);
  const Equation& eq = equation(sys, "e121111");
  EXPECT_EQ(eq.rhs_constant, 90);
  EXPECT_EQ(eq.lhs, var(Slot::kAlpha, -1) * var(Slot::kKappa) * frac(1, 2));
}

TEST(Assemble, RightSidesFollowDegreeConstants) {
  for (auto [m, p] : testing::covered_cases()) {
    if (p < 2) continue;
    const EquationSystem sys = assemble_equations(m, p);
    const FreeLieAlgebra alg = build_algebra(m, p);
    for (const Equation& eq : sys.equations) {
      EXPECT_FALSE(eq.lhs.uses_variable(kVariableC));
      EXPECT_FALSE(eq.lhs.uses_variable(static_cast<int>(Slot::kLambda)));
      const Rational k = degree_constant(alg, eq.degree);
      switch (eq.kind) {
        case EquationKind::kDiagonal:
        case EquationKind::kAuxiliary:
          EXPECT_EQ(eq.rhs_constant, k) << eq.label;
          EXPECT_EQ(eq.gram, Laurent(Rational(1))) << eq.label;
          break;
        case EquationKind::kBlockTrace:
          EXPECT_EQ(eq.rhs_constant, 2 * k) << eq.label;
          break;
        case EquationKind::kBlockEntry:
          EXPECT_EQ(eq.rhs_constant, k) << eq.label;
          break;
        case EquationKind::kOffDiagonal:
          EXPECT_EQ(eq.rhs_constant, 0) << eq.label;
          break;
      }
    }
  }
}

TEST(Assemble, F27KeepsBlocksSymbolic) {
  const EquationSystem sys = assemble_equations(2, 7);
  EXPECT_GE(sys.find("V", EquationKind::kBlockTrace), 0);
  EXPECT_GE(sys.find("W", EquationKind::kBlockTrace), 0);
  bool v12 = false, w12 = false;
  for (const Equation& eq : sys.equations) {
    v12 = v12 || eq.lhs.uses_variable(static_cast<int>(Slot::kV12));
    w12 = w12 || eq.lhs.uses_variable(static_cast<int>(Slot::kW12));
  }
  EXPECT_TRUE(v12);
  EXPECT_TRUE(w12);
}

TEST(Assemble, GeneratorScaleSubstitutesLambda) {
  const EquationSystem sys = assemble_equations(2, 4, frac(5, 3));
  EXPECT_EQ(sys.generator_scale, frac(5, 3));
  const Equation& eq = equation(sys, "e12");
  // lambda^2 follows the generator norm s, so Ric(e12)/|e12|^2 = 1/(2s) - xi^2/s^2.
  EXPECT_EQ(eq.lhs, Laurent(frac(3, 10)) - var(Slot::kXi) * frac(9, 25));
}

TEST(Assemble, StopCheckCancels) {
  EXPECT_THROW(assemble_equations(2, 7, 1, [] { return true; }), CancelledError);
  EXPECT_NO_THROW(assemble_equations(2, 4, 1, [] { return false; }));
}

TEST(Assemble, Unsupported) {
  EXPECT_THROW(assemble_equations(3, 5), UnsupportedCase);
  EXPECT_THROW(assemble_equations(2, 8), UnsupportedCase);
}

TEST(Solve, F24) {
  const ClassificationOutcome o = solve_free(2, 4);
  ASSERT_EQ(o.verdict, Verdict::kEinsteinNilradical);
  const EinsteinSolution& s = *o.solution;
  EXPECT_EQ(slot(s, Slot::kXi), QuadraticNumber(frac(9, 4)));
  EXPECT_EQ(slot(s, Slot::kSigma), QuadraticNumber(frac(9, 2)));
  EXPECT_EQ(s.C, QuadraticNumber(frac(1, 16)));
  EXPECT_TRUE(s.exact_residual_zero);
  EXPECT_LE(s.float_residual, 1e-12);
  EXPECT_TRUE(verify_outcome(o));
  ASSERT_TRUE(o.extension);
  EXPECT_EQ(o.extension->c_hat, QuadraticNumber(frac(11, 8)));
  EXPECT_EQ(o.extension->h_norm_sq, QuadraticNumber(frac(121, 4)));
  EXPECT_EQ(o.extension->einstein_constant, QuadraticNumber(frac(-9, 2)));
  EXPECT_EQ(o.extension->dimension, 9);
}

TEST(Solve, F25InQuadraticField) {
  const ClassificationOutcome o = solve_free(2, 5);
  ASSERT_EQ(o.verdict, Verdict::kEinsteinNilradical);
  const EinsteinSolution& s = *o.solution;
  const QuadraticNumber c = s.C;
  EXPECT_EQ(c, QuadraticNumber(frac(131, 2928), frac(5, 2928), 745));
  EXPECT_EQ(s.c_minimal_polynomial, Polynomial({Rational(-1), Rational(-524), Rational(5856)}));
  EXPECT_EQ(s.radicand, 745);
  EXPECT_EQ(slot(s, Slot::kXi), c * 54);
  const QuadraticNumber sigma = QuadraticNumber(frac(3, 4)) + c * 375;
  EXPECT_EQ(slot(s, Slot::kSigma), sigma);
  EXPECT_EQ(slot(s, Slot::kAlpha), c * sigma * 76);
  EXPECT_EQ(slot(s, Slot::kGamma), c * (QuadraticNumber(1) + c * 128) * 27);
  EXPECT_TRUE(s.exact_residual_zero);
  EXPECT_LE(s.float_residual, 1e-12);
  EXPECT_TRUE(verify_outcome(o));
}

TEST(Solve, StepThreeFamily) {
  for (int m = 2; m <= 5; ++m) {
    const ClassificationOutcome o = solve_free(m, 3);
    ASSERT_EQ(o.verdict, Verdict::kEinsteinNilradical) << m;
    const QuadraticNumber xi = slot(*o.solution, Slot::kXi);
    EXPECT_EQ(xi, QuadraticNumber(frac(3 * (m + 1), -m * m + 4 * m + 8)));
    EXPECT_EQ(xi, QuadraticNumber(Rational(3 * three_step_parameter(m))));
    EXPECT_TRUE(verify_outcome(o));
  }
  EXPECT_THROW(three_step_parameter(6), DomainError);
}

TEST(Solve, LowSteps) {
  for (int m = 2; m <= 5; ++m) {
    const ClassificationOutcome abelian = solve_free(m, 1);
    ASSERT_EQ(abelian.verdict, Verdict::kEinsteinNilradical);
    EXPECT_EQ(abelian.solution->C, QuadraticNumber(frac(1, m)));
    EXPECT_TRUE(verify_outcome(abelian));
    EXPECT_EQ(abelian.extension->c_hat, QuadraticNumber(1));
    const ClassificationOutcome two = solve_free(m, 2);
    ASSERT_EQ(two.verdict, Verdict::kEinsteinNilradical);
    EXPECT_TRUE(verify_outcome(two));
  }
  const ClassificationOutcome h = solve_free(2, 2);
  EXPECT_EQ(h.solution->C, QuadraticNumber(frac(1, 4)));
  EXPECT_EQ(h.extension->einstein_constant, QuadraticNumber(frac(-3, 2)));
}

TEST(Solve, F34Univariate) {
  const ClassificationOutcome o = solve_free(3, 4);
  ASSERT_EQ(o.verdict, Verdict::kNotEinstein);
  ASSERT_TRUE(o.univariate);
  EXPECT_EQ(o.univariate->variable, "xi^2");
  EXPECT_EQ(o.univariate->polynomial.primitive(), Polynomial({Rational(99), Rational(171), Rational(16)}));
  EXPECT_TRUE(verify_outcome(o));
}

TEST(Solve, F26PositiveCombination) {
  const EquationSystem sys = assemble_equations(2, 6);
  const ClassificationOutcome o = solve_equations(sys);
  ASSERT_EQ(o.verdict, Verdict::kNotEinstein);
  ASSERT_TRUE(o.combination);
  EXPECT_TRUE(is_contradiction(*o.combination));
  EXPECT_TRUE(verify_outcome(o));

  const Combination c = combine(sys, by_label(sys, {{"e121", 2}, {"e1211", 3}, {"u", 2}, {"e12111", 4},
                                                    {"I", 2}, {"z", 3}, {"e121111", 5}}));
  EXPECT_EQ(c.rhs, -18);
  EXPECT_EQ(c.lhs, var(Slot::kXi) + var(Slot::kGamma, -1) * var(Slot::kTheta));
  EXPECT_TRUE(is_contradiction(c));
}

TEST(Solve, F27PositiveCombination) {
  const EquationSystem sys = assemble_equations(2, 7);
  const Combination c = combine(
      sys, by_label(sys, {{"e12", 1}, {"e121", 2}, {"e1211", 6}, {"e12111", 8}, {"u", 4}, {"e121111", 10},
                          {"z", 9}, {"I", 3}, {"V", 12}, {"W", 6}, {"e1211111", 12}}));
  EXPECT_EQ(c.rhs, -28);
  EXPECT_TRUE(is_contradiction(c));
  const ClassificationOutcome o = solve_equations(sys);
  ASSERT_EQ(o.verdict, Verdict::kNotEinstein);
  EXPECT_TRUE(verify_outcome(o));
}

TEST(Certificates, TamperedOutcomesFail) {
  ClassificationOutcome e = solve_free(2, 4);
  e.solution->C = QuadraticNumber(frac(1, 15));
  EXPECT_FALSE(verify_outcome(e));
  e = solve_free(2, 4);
  e.solution->slots[static_cast<int>(Slot::kSigma)] = QuadraticNumber(5);
  EXPECT_FALSE(verify_outcome(e));

  ClassificationOutcome u = solve_free(3, 4);
  u.univariate->polynomial = Polynomial({Rational(-99), Rational(171), Rational(16)});
  EXPECT_FALSE(verify_outcome(u));

  const EquationSystem sys = assemble_equations(2, 6);
  ClassificationOutcome n = solve_equations(sys);
  // Dropping the top-degree equation leaves an uncancelled negative term.
  std::vector<std::pair<int, Rational>> w;
  for (const auto& [idx, weight] : n.combination->weights)
    if (sys.equations[idx].label != "e121111") w.emplace_back(idx, weight);
  n.combination = combine(sys, w);
  EXPECT_FALSE(verify_outcome(n));

  ClassificationOutcome s;
  s.m = 2;
  s.p = 8;
  s.verdict = Verdict::kScreened;
  EXPECT_FALSE(verify_outcome(s));
  s.cone = cone_test(canonical_type(2, 8));
  EXPECT_TRUE(verify_outcome(s));
}

TEST(Certificates, ContradictionRules) {
  const EquationSystem sys = assemble_equations(2, 4);
  // A single equation with a negative monomial is not a contradiction.
  EXPECT_FALSE(is_contradiction(combine(sys, {{sys.find("e1"), Rational(1)}})));
  // Positive monomials with a positive right side are not either.
  EXPECT_FALSE(is_contradiction(combine(sys, {{sys.find("e1211"), Rational(1)}})));
  Combination c;
  c.rhs = -1;
  EXPECT_FALSE(is_contradiction(c));
  c.lhs = Laurent(Rational(1));
  EXPECT_TRUE(is_contradiction(c));
  c.weights.emplace_back(0, Rational(-1));
  EXPECT_FALSE(is_contradiction(c));
}

TEST(Solve, ScalingLaw) {
  const Rational s = frac(5, 3);
  for (auto [m, p] : std::vector<std::pair<int, int>>{{2, 2}, {3, 3}, {2, 4}, {2, 5}, {3, 4}, {2, 6}}) {
    const ClassificationOutcome base = solve_free(m, p);
    const ClassificationOutcome scaled = solve_free(m, p, s);
    EXPECT_EQ(base.verdict, scaled.verdict) << m << "," << p;
    EXPECT_TRUE(verify_outcome(scaled));
    if (base.verdict != Verdict::kEinsteinNilradical) continue;
    EXPECT_EQ(scaled.solution->C * QuadraticNumber(s), base.solution->C);
    for (Slot k : assemble_equations(m, p).slots)
      EXPECT_EQ(*scaled.solution->slots[static_cast<int>(k)], *base.solution->slots[static_cast<int>(k)] * QuadraticNumber(s));
  }
}

TEST(Classify, SmallGridMatchesClassification) {
  const ClassificationReport r = classify(5, 7);
  EXPECT_TRUE(r.gaps.empty());
  EXPECT_EQ(r.cases.size(), 4u * 7u);
  EXPECT_TRUE(report_matches_classification(r));
  int positive = 0;
  for (const ClassificationOutcome& c : r.cases) {
    const bool einstein = c.verdict == Verdict::kEinsteinNilradical;
    positive += einstein;
    EXPECT_EQ(einstein, c.extension.has_value());
    if (c.p >= 3 && !expected_einstein_nilradical(c.m, c.p) && !(c.m == 2 || (c.m == 3 && c.p == 4)))
      EXPECT_EQ(c.verdict, Verdict::kScreened) << c.m << "," << c.p;
  }
  EXPECT_EQ(positive, 4 * 2 + 4 + 2);
}

TEST(Classify, TamperedReportDoesNotMatch) {
  ClassificationReport r = classify(2, 4);
  ASSERT_TRUE(report_matches_classification(r));
  r.gaps.push_back({9, 9, "test"});
  EXPECT_FALSE(report_matches_classification(r));
  EXPECT_THROW(classify(1, 3), DomainError);
}

}  // namespace
}  // namespace nilsolv
