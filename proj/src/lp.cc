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

#include <stdexcept>

#include "nilsolv/errors.h"

namespace nilsolv {

FeasibilityResult solve_feasibility(const Matrix<Rational>& a, const std::vector<Rational>& b) {
  const std::size_t rows = a.rows();
  const std::size_t n = a.cols();
  if (b.size() != rows) throw DomainError("solve_feasibility: right side has the wrong length");

  // Tableau [S A | I | S b] with S flipping rows so the right side is >= 0.
  const std::size_t width = n + rows + 1;
  const std::size_t rhs = width - 1;
  Matrix<Rational> t(rows, width);
  std::vector<int> flip(rows, 1);
  for (std::size_t i = 0; i < rows; ++i) {
    if (sgn(b[i]) < 0) flip[i] = -1;
    for (std::size_t j = 0; j < n; ++j) t(i, j) = flip[i] * a(i, j);
    t(i, n + i) = 1;
    t(i, rhs) = flip[i] * b[i];
  }
  std::vector<std::size_t> basis(rows);
  for (std::size_t i = 0; i < rows; ++i) basis[i] = n + i;

  // Reduced costs of the phase-one objective (sum of artificials).
  std::vector<Rational> reduced(width, Rational(0));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < rows; ++i) reduced[j] -= t(i, j);
  for (std::size_t i = 0; i < rows; ++i) reduced[rhs] -= t(i, rhs);

  for (;;) {
    std::size_t enter = width;
    for (std::size_t j = 0; j + 1 < width; ++j)
      if (sgn(reduced[j]) < 0) {
        enter = j;
        break;
      }
    if (enter == width) break;
    std::size_t leave = rows;
    Rational best;
    for (std::size_t i = 0; i < rows; ++i) {
      if (sgn(t(i, enter)) <= 0) continue;
      Rational ratio = t(i, rhs) / t(i, enter);
      if (leave == rows || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    // The phase-one objective is bounded below by zero, so a ratio always exists.
    if (leave == rows) throw std::logic_error("solve_feasibility: unbounded phase one");

    const Rational pivot = t(leave, enter);
    for (std::size_t j = 0; j < width; ++j) t(leave, j) /= pivot;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == leave) continue;
      const Rational f = t(i, enter);
      if (sgn(f) == 0) continue;
      for (std::size_t j = 0; j < width; ++j) t(i, j) -= f * t(leave, j);
    }
    const Rational f = reduced[enter];
    for (std::size_t j = 0; j < width; ++j) reduced[j] -= f * t(leave, j);
    basis[leave] = enter;
  }

  FeasibilityResult out;
  Rational objective = 0;
  for (std::size_t i = 0; i < rows; ++i)
    if (basis[i] >= n) objective += t(i, rhs);
  if (sgn(objective) == 0) {
    out.feasible = true;
    out.x.assign(n, Rational(0));
    for (std::size_t i = 0; i < rows; ++i)
      if (basis[i] < n) out.x[basis[i]] = t(i, rhs);
    if (!verify_primal(a, b, out.x)) throw std::logic_error("solve_feasibility: primal witness failed");
  } else {
    // Simplex multipliers pi_i = 1 - reduced cost of artificial i; undo the row flips.
    out.y.resize(rows);
    for (std::size_t i = 0; i < rows; ++i) out.y[i] = flip[i] * (Rational(1) - reduced[n + i]);
    if (!verify_farkas(a, b, out.y)) throw std::logic_error("solve_feasibility: Farkas witness failed");
  }
  return out;
}

bool verify_primal(const Matrix<Rational>& a, const std::vector<Rational>& b, const std::vector<Rational>& x) {
  if (x.size() != a.cols() || b.size() != a.rows()) return false;
  for (const Rational& v : x)
    if (sgn(v) < 0) return false;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    if (s != b[i]) return false;
  }
  return true;
}

bool verify_farkas(const Matrix<Rational>& a, const std::vector<Rational>& b, const std::vector<Rational>& y) {
  if (y.size() != a.rows() || b.size() != a.rows()) return false;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += y[i] * a(i, j);
    if (sgn(s) > 0) return false;
  }
  Rational s = 0;
  for (std::size_t i = 0; i < a.rows(); ++i) s += y[i] * b[i];
  return sgn(s) > 0;
}

std::vector<Rational> primitive_integer(const std::vector<Rational>& v) {
  Integer den = 1;
  for (const Rational& q : v) den = lcm(den, Integer(q.get_den()));
  Integer g = 0;
  for (const Rational& q : v) g = gcd(g, Integer(q.get_num() * (den / q.get_den())));
  if (g == 0) return v;
  std::vector<Rational> out;
  out.reserve(v.size());
  for (const Rational& q : v) out.emplace_back(Integer(q.get_num() * (den / q.get_den())) / g);
  return out;
}

}  // namespace nilsolv
