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


#ifndef NILSOLV_LP_H_
#define NILSOLV_LP_H_

#include <vector>

#include "nilsolv/matrix.h"
#include "nilsolv/rational.h"

namespace nilsolv {

// Outcome of deciding whether A x = b has a solution with x >= 0. Exactly one
// of the two witnesses is meaningful:
//   feasible:   A x = b and x >= 0;
//   infeasible: y^T A <= 0 componentwise and y^T b > 0 (Farkas alternative).
struct FeasibilityResult {
  bool feasible = false;
  std::vector<Rational> x;
  std::vector<Rational> y;
};

// Exact phase-one simplex with Bland's rule, so it terminates on degenerate
// input. Both witnesses are re-verified before returning.
FeasibilityResult solve_feasibility(const Matrix<Rational>& a, const std::vector<Rational>& b);

bool verify_primal(const Matrix<Rational>& a, const std::vector<Rational>& b, const std::vector<Rational>& x);
bool verify_farkas(const Matrix<Rational>& a, const std::vector<Rational>& b, const std::vector<Rational>& y);

// Scales a nonzero rational vector by a positive factor to a primitive integer vector.
std::vector<Rational> primitive_integer(const std::vector<Rational>& v);

}  // namespace nilsolv

#endif  // NILSOLV_LP_H_
