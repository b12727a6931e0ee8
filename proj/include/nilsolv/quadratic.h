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

#ifndef NILSOLV_QUADRATIC_H_
#define NILSOLV_QUADRATIC_H_

#include <iosfwd>
#include <string>

#include "nilsolv/rational.h"

namespace nilsolv {

// Exact element a + b*sqrt(d) of a real quadratic field. A radicand of 0 marks
// a plain rational; mixing two different nonzero radicands is a DomainError.
class QuadraticNumber {
 public:
  QuadraticNumber() = default;
  QuadraticNumber(long value) : a_(value) {}  // NOLINT(runtime/explicit)
  QuadraticNumber(const Rational& a) : a_(a) {}  // NOLINT(runtime/explicit)
  QuadraticNumber(const Rational& a, const Rational& b, long radicand);

  const Rational& rational_part() const { return a_; }
  const Rational& irrational_part() const { return b_; }
  long radicand() const { return d_; }
  bool is_rational() const { return sgn(b_) == 0; }

  int sign() const;
  double to_double() const;
  QuadraticNumber conjugate() const;

  QuadraticNumber& operator+=(const QuadraticNumber& o);
  QuadraticNumber& operator-=(const QuadraticNumber& o);
  QuadraticNumber& operator*=(const QuadraticNumber& o);
  QuadraticNumber& operator/=(const QuadraticNumber& o);
  QuadraticNumber operator-() const;

  friend QuadraticNumber operator+(QuadraticNumber x, const QuadraticNumber& y) { return x += y; }
  friend QuadraticNumber operator-(QuadraticNumber x, const QuadraticNumber& y) { return x -= y; }
  friend QuadraticNumber operator*(QuadraticNumber x, const QuadraticNumber& y) { return x *= y; }
  friend QuadraticNumber operator/(QuadraticNumber x, const QuadraticNumber& y) { return x /= y; }
  friend bool operator==(const QuadraticNumber& x, const QuadraticNumber& y);
  friend bool operator!=(const QuadraticNumber& x, const QuadraticNumber& y) { return !(x == y); }
  friend bool operator<(const QuadraticNumber& x, const QuadraticNumber& y) { return (x - y).sign() < 0; }
  friend bool operator>(const QuadraticNumber& x, const QuadraticNumber& y) { return y < x; }

  // "a + b*sqrt(d)" with rational parts in n/d form.
  std::string to_string() const;

 private:
  long merge_radicand(const QuadraticNumber& o) const;
  void normalize();

  Rational a_;
  Rational b_;
  long d_ = 0;
};

std::ostream& operator<<(std::ostream& os, const QuadraticNumber& x);

}  // namespace nilsolv

#endif  // NILSOLV_QUADRATIC_H_
