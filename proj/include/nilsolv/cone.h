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


#ifndef NILSOLV_CONE_H_
#define NILSOLV_CONE_H_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nilsolv/rational.h"

namespace nilsolv {

// Eigenvalues mu_1 < ... < mu_p of a diagonal derivation with multiplicities d.
struct EigenvalueType {
  std::vector<Rational> mu;
  std::vector<Integer> multiplicity;

  int size() const { return static_cast<int>(mu.size()); }
  // Throws DomainError unless the lengths agree, mu is strictly increasing
  // and positive, and every multiplicity is at least one.
  void validate() const;
  Rational trace() const;          // sum d_i mu_i
  Rational trace_squares() const;  // sum d_i mu_i^2
};

// Parses "mu1,mu2,...;d1,d2,..." with rational mu entries.
EigenvalueType parse_eigenvalue_type(const std::string& text);
// The type (1, ..., p; d_1(m), ..., d_p(m)) of the canonical derivation of f(m, p).
EigenvalueType canonical_type(int m, int p);

// v_k = d_k sum_i d_i mu_i (mu_k - mu_i); orthogonal to mu.
std::vector<Rational> cone_vector(const EigenvalueType& t);

// f_k - f_i - f_j for every unordered pair i <= j with mu_i + mu_j = mu_k.
struct Root {
  int i = 0;
  int j = 0;
  int k = 0;
  std::vector<Integer> vector;
};
std::vector<Root> root_set(const EigenvalueType& t);

// Feasible: nonnegative weights T_ij (keyed by 0-based i <= j) solving
//   sum_{mu_i + mu_j = mu_k} T_ij - 2 sum_j T_kj = 4 v_k / Tr   for all k,
// where the first sum runs over ordered pairs and T is symmetric.
// Infeasible: a separating vector a with <a, f> <= 0 on the roots and <a, v> > 0.
struct ConeCertificate {
  bool feasible = false;
  std::map<std::pair<int, int>, Rational> weights;
  std::vector<Rational> separator;
};

ConeCertificate cone_test(const EigenvalueType& t);
bool verify_certificate(const EigenvalueType& t, const ConeCertificate& cert);
// <a, f> <= 0 on every root and <a, v> > 0.
bool is_separating(const EigenvalueType& t, const std::vector<Rational>& a);

struct ScreenResult {
  int m = 0;
  int p = 0;
  bool survivor = true;
  EigenvalueType type;
  ConeCertificate certificate;  // empty when p <= 2
};

inline constexpr int kMaxScreenStep = 64;

// p <= 2 always survives; otherwise the cone test on the canonical type.
// Only Witt numbers are needed, so the algebra dimension ceiling does not
// apply; steps above kMaxScreenStep raise ResourceError.
ScreenResult screen_free(int m, int p);

// The grid 2 <= m <= max_m, 3 <= p <= max_p screened in parallel, in (m, p) order.
std::vector<ScreenResult> screen_grid(int max_m, int max_p);

}  // namespace nilsolv

#endif  // NILSOLV_CONE_H_
