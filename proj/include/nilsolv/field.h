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

#ifndef NILSOLV_FIELD_H_
#define NILSOLV_FIELD_H_

#include <cmath>
#include <type_traits>

#include "nilsolv/quadratic.h"
#include "nilsolv/rational.h"

namespace nilsolv {

// Uniform access to the three scalar types the numeric code is templated on:
// Rational (exact), QuadraticNumber (exact, real quadratic field) and double.
template <class F>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static constexpr bool kExact = true;
  static Rational from(const Rational& q) { return q; }
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static int sign(const Rational& x) { return sgn(x); }
  static double to_double(const Rational& x) { return x.get_d(); }
};

template <>
struct FieldTraits<QuadraticNumber> {
  static constexpr bool kExact = true;
  static QuadraticNumber from(const Rational& q) { return QuadraticNumber(q); }
  static bool is_zero(const QuadraticNumber& x) { return x.sign() == 0; }
  static int sign(const QuadraticNumber& x) { return x.sign(); }
  static double to_double(const QuadraticNumber& x) { return x.to_double(); }
};

template <>
struct FieldTraits<double> {
  static constexpr bool kExact = false;
  static double from(const Rational& q) { return q.get_d(); }
  static bool is_zero(double x) { return x == 0.0; }
  static int sign(double x) { return (x > 0) - (x < 0); }
  static double to_double(double x) { return x; }
};

template <class F>
F field_abs(const F& x) {
  return FieldTraits<F>::sign(x) < 0 ? F(-x) : x;
}

}  // namespace nilsolv

#endif  // NILSOLV_FIELD_H_
