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


#ifndef NILSOLV_NILSOLITON_H_
#define NILSOLV_NILSOLITON_H_

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilsolv/cone.h"
#include "nilsolv/laurent.h"
#include "nilsolv/metric.h"
#include "nilsolv/polynomial.h"
#include "nilsolv/quadratic.h"
#include "nilsolv/rational.h"

namespace nilsolv {

enum class EquationKind {
  kDiagonal,     // Ric(x, x) / |x|^2 for a slot-defining frame vector
  kAuxiliary,    // the same for any other scalar frame vector
  kBlockTrace,   // trace of Ric over a V or W pair relative to its Gram block
  kBlockEntry,   // one entry of Ric on a V or W pair
  kOffDiagonal,  // Ric(x, y) for orthogonal x != y in one content class
};

std::string_view kind_name(EquationKind k);

// lhs = rhs_constant * C * gram, with lhs free of C. For normalized equations
// gram is 1; rhs_constant is k Tr Phi - Tr Phi^2 on degree k (twice that for
// a block trace, zero for off-diagonal entries).
struct Equation {
  std::string label;
  EquationKind kind = EquationKind::kDiagonal;
  int degree = 0;
  int first = -1;
  int second = -1;
  Laurent lhs;
  Rational rhs_constant;
  Laurent gram;
};

struct EquationSystem {
  int m = 0;
  int p = 0;
  Rational generator_scale = 1;
  std::vector<Slot> slots;  // admissible family parameters, lambda excluded
  std::vector<Equation> equations;
  // Orthogonal frame pairs in one content class; each one whose Ric entry is
  // not identically zero also appears as an off-diagonal equation.
  int orthogonal_pairs = 0;
  // Non-constant monomials of the diagonal equations, and integer relations
  // r with prod monomials[i]^r[i] = 1 among them.
  std::vector<Monomial> monomials;
  std::vector<std::vector<Integer>> relations;

  // Index of the first equation with this label and kind, or -1.
  int find(const std::string& label, EquationKind kind = EquationKind::kDiagonal) const;
};

// Symbolic Ricci of the admissible family with lambda fixed to the generator
// scale. Throws UnsupportedCase outside the family's coverage.
EquationSystem assemble_equations(int m, int p, const Rational& generator_scale = 1,
                                  const StopCheck& should_stop = {});

// Sum of weight * equation: lhs and the coefficient of C on the right.
struct Combination {
  std::vector<std::pair<int, Rational>> weights;  // equation index, weight >= 0
  std::vector<std::string> labels;                // equation label per weight
  Laurent lhs;
  Rational rhs;
};

// True when every weight is >= 0, each Gram-free monomial has a coefficient
// >= 0, the 2x2 coefficient matrix of every V or W block is positive
// semidefinite, some coefficient is positive and the right side is negative.
// Such a combination is positive on every admissible metric but equals a
// negative multiple of C > 0.
bool is_contradiction(const Combination& c);
Combination combine(const EquationSystem& sys, const std::vector<std::pair<int, Rational>>& weights);

struct UnivariateCertificate {
  std::string variable;   // e.g. "xi^2"
  Polynomial polynomial;  // vanishes at the positive value of variable; one-signed
  std::vector<Integer> relation;  // the monomial relation it came from
};

struct EinsteinSolution {
  std::array<std::optional<QuadraticNumber>, kSlotCount> slots{};  // squared parameters
  QuadraticNumber C;
  Polynomial c_minimal_polynomial;
  long radicand = 1;
  bool exact_residual_zero = false;
  double float_residual = 0;
};

struct ExtensionData {
  QuadraticNumber c_hat;
  QuadraticNumber h_norm_sq;
  QuadraticNumber einstein_constant;
  int dimension = 0;
};

enum class Verdict { kEinsteinNilradical, kNotEinstein, kScreened };
std::string_view verdict_name(Verdict v);

struct ClassificationOutcome {
  int m = 0;
  int p = 0;
  Verdict verdict = Verdict::kNotEinstein;
  std::optional<EinsteinSolution> solution;
  std::optional<Combination> combination;
  std::optional<UnivariateCertificate> univariate;
  std::optional<ConeCertificate> cone;
  std::optional<ExtensionData> extension;
};

// Decides the system; throws UndecidedError if neither a verified solution
// nor a certificate is found.
ClassificationOutcome solve_equations(const EquationSystem& sys);
// solve_equations on f(m, p), with the abelian case p = 1 handled directly.
ClassificationOutcome solve_free(int m, int p, const Rational& generator_scale = 1);

// Re-checks whichever certificate the outcome carries.
bool verify_outcome(const ClassificationOutcome& outcome);

// Rank-one extension of a solved case, computed in exact arithmetic.
ExtensionData extension_data(int m, int p, const EinsteinSolution& solution, const Rational& generator_scale = 1);

struct ClassificationReport {
  std::vector<ClassificationOutcome> cases;
  struct Gap {
    int m;
    int p;
    std::string reason;
  };
  std::vector<Gap> gaps;
};

// Every (m, p) with 2 <= m <= max_m and 1 <= p <= max_p, in parallel.
ClassificationReport classify(int max_m, int max_p);
// No gaps, every certificate re-verifies and each verdict agrees with
// expected_einstein_nilradical.
bool report_matches_classification(const ClassificationReport& r);

// The Einstein nilradicals among free algebras: p <= 2, p = 3 with m <= 5,
// and (2, 4), (2, 5).
bool expected_einstein_nilradical(int m, int p);
// t = (m + 1) / (-m^2 + 4m + 8), so that |e_iji|^2 = 3t in the 3-step case.
Rational three_step_parameter(int m);

}  // namespace nilsolv

#endif  // NILSOLV_NILSOLITON_H_
