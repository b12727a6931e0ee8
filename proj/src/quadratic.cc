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

#include "nilsolv/quadratic.h"

#include <cmath>
#include <ostream>

#include "nilsolv/errors.h"

namespace nilsolv {

QuadraticNumber::QuadraticNumber(const Rational& a, const Rational& b, long radicand)
    : a_(a), b_(b), d_(radicand) {
  if (radicand < 0) throw DomainError("negative radicand in quadratic number");
  normalize();
}

void QuadraticNumber::normalize() {
  if (d_ == 0 || d_ == 1) {
    if (d_ == 1) a_ += b_;
    b_ = 0;
    d_ = 0;
  }
  if (sgn(b_) == 0) d_ = 0;
}

long QuadraticNumber::merge_radicand(const QuadraticNumber& o) const {
  if (d_ == 0) return o.d_;
  if (o.d_ == 0 || o.d_ == d_) return d_;
  throw DomainError("arithmetic across different quadratic fields");
}

int QuadraticNumber::sign() const {
  int sa = sgn(a_), sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // a and b*sqrt(d) have opposite signs: compare a^2 with b^2 d.
  Rational lhs = a_ * a_;
  Rational rhs = b_ * b_ * d_;
  int c = cmp(lhs, rhs);
  return c == 0 ? 0 : (c > 0 ? sa : sb);
}

double QuadraticNumber::to_double() const {
  return a_.get_d() + b_.get_d() * std::sqrt(static_cast<double>(d_));
}

QuadraticNumber QuadraticNumber::conjugate() const {
  QuadraticNumber r = *this;
  r.b_ = -r.b_;
  return r;
}

QuadraticNumber& QuadraticNumber::operator+=(const QuadraticNumber& o) {
  d_ = merge_radicand(o);
  a_ += o.a_;
  b_ += o.b_;
  normalize();
  return *this;
}

QuadraticNumber& QuadraticNumber::operator-=(const QuadraticNumber& o) {
  d_ = merge_radicand(o);
  a_ -= o.a_;
  b_ -= o.b_;
  normalize();
  return *this;
}

QuadraticNumber& QuadraticNumber::operator*=(const QuadraticNumber& o) {
  long d = merge_radicand(o);
  Rational a = a_ * o.a_ + b_ * o.b_ * d;
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = a;
  b_ = b;
  d_ = d;
  normalize();
  return *this;
}

QuadraticNumber& QuadraticNumber::operator/=(const QuadraticNumber& o) {
  long d = merge_radicand(o);
  Rational norm = o.a_ * o.a_ - o.b_ * o.b_ * d;
  if (sgn(norm) == 0) throw DomainError("division by zero in quadratic field");
  QuadraticNumber inv(o.a_ / norm, -o.b_ / norm, d);
  return *this *= inv;
}

QuadraticNumber QuadraticNumber::operator-() const {
  QuadraticNumber r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

bool operator==(const QuadraticNumber& x, const QuadraticNumber& y) {
  return (x - y).sign() == 0;
}

std::string QuadraticNumber::to_string() const {
  if (is_rational()) return nilsolv::to_string(a_);
  return nilsolv::to_string(a_) + " + " + nilsolv::to_string(b_) + "*sqrt(" + std::to_string(d_) + ")";
}

std::ostream& operator<<(std::ostream& os, const QuadraticNumber& x) { return os << x.to_string(); }

}  // namespace nilsolv
