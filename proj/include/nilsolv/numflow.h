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


#ifndef NILSOLV_NUMFLOW_H_
#define NILSOLV_NUMFLOW_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace nilsolv {

// Floating-point search for a nilsoliton inside the admissible family. It is
// evidence only; the exact solver decides.
struct FlowConfig {
  int restarts = 8;
  int max_iterations = 400;
  double tolerance = 1e-10;  // target for the residual norm
  std::uint64_t seed = 1;
  double positivity_floor = 1e-12;  // lower bound on every squared parameter and C
  void validate() const;  // DomainError on restarts < 1, max_iterations < 1 or tolerance <= 0
};

struct FlowResult {
  std::map<std::string, double> params;  // squared parameters by slot name; V/W entries included
  double C = 0;
  // Frobenius norm of ric - (c id + phi), with ric the Ricci operator.
  double residual = 0;
  int iterations = 0;  // of the best restart
  int best_restart = 0;
  bool converged = false;  // residual < tolerance
  // |Tr(phi o Phi) + c Tr Phi| at the returned point, phi = ric - c id.
  double trace_identity_defect = 0;
  // Objective (squared residual) after each accepted step of the best restart.
  std::vector<double> history;
};

// Levenberg-Marquardt on log-parameters with central-difference Jacobians and
// a backtracking line search; restarts run concurrently and the smallest
// residual wins, ties going to the lower restart index. Throws
// UnsupportedCase outside the admissible family's coverage.
FlowResult residual_minimize(int m, int p, const FlowConfig& cfg);

}  // namespace nilsolv

#endif  // NILSOLV_NUMFLOW_H_
