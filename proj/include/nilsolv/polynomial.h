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

#ifndef NILSOLV_POLYNOMIAL_H_
#define NILSOLV_POLYNOMIAL_H_

#include <string>
#include <utility>
#include <vector>

#include "nilsolv/quadratic.h"
#include "nilsolv/rational.h"

namespace nilsolv {

// Dense univariate polynomial over Q; coefficient i multiplies x^i. The zero
// polynomial has no coefficients and degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coefficients);
  static Polynomial constant(const Rational& c) { return Polynomial({c}); }
  static Polynomial x() { return Polynomial({Rational(0), Rational(1)}); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  Rational coefficient(int i) const;
  const Rational& leading() const { return coeffs_.back(); }

  Rational evaluate(const Rational& t) const;
  QuadraticNumber evaluate(const QuadraticNumber& t) const;
  double evaluate(double t) const;
  Polynomial derivative() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Rational& s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  // Quotient and remainder; throws DomainError on a zero divisor.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const;
  Polynomial monic() const;
  // Integer coefficients with gcd 1 and positive leading coefficient.
  Polynomial primitive() const;
  // Removes the factor x^k of maximal k.
  Polynomial strip_zero_roots() const;

  // True when every nonzero coefficient has the same strict sign.
  bool one_signed() const;

  std::string to_string(const std::string& variable) const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

Polynomial gcd(Polynomial a, Polynomial b);
Polynomial squarefree_part(const Polynomial& p);

std::vector<Polynomial> sturm_sequence(const Polynomial& p);
// Number of distinct real roots in the half-open interval (lo, hi].
int count_roots(const std::vector<Polynomial>& sturm, const Rational& lo, const Rational& hi);

struct RootInterval {
  Rational lo;
  Rational hi;
};
// Disjoint intervals (lo, hi], each containing exactly one positive root.
std::vector<RootInterval> isolate_positive_roots(const Polynomial& p);

// Exact positive roots. Rational roots are found by the rational root test;
// a remaining irreducible quadratic factor yields roots in Q(sqrt d) with d
// squarefree. Higher-degree irrational factors raise UndecidedError.
std::vector<QuadraticNumber> exact_positive_roots(const Polynomial& p);

// Minimal polynomial over Q of x, as a primitive integer polynomial.
Polynomial minimal_polynomial(const QuadraticNumber& x);

}  // namespace nilsolv

#endif  // NILSOLV_POLYNOMIAL_H_
