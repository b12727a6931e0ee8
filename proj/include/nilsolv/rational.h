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

#ifndef NILSOLV_RATIONAL_H_
#define NILSOLV_RATIONAL_H_

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace nilsolv {

using Rational = mpq_class;
using Integer = mpz_class;

// Accepts "n", "n/d" and "-n/d"; the result is canonicalized.
Rational parse_rational(std::string_view text);

// Always "n/d", including integers ("3/1").
std::string to_string(const Rational& q);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

Integer lcm_of_denominators(const Rational* first, const Rational* last);

}  // namespace nilsolv

#endif  // NILSOLV_RATIONAL_H_
