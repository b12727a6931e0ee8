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

#ifndef NILSOLV_LAURENT_H_
#define NILSOLV_LAURENT_H_

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "nilsolv/rational.h"

namespace nilsolv {

// Metric parameter slots. Scalar slots stand for squared norms (lambda means
// lambda^2); the V and W slots are entries of 2x2 Gram blocks.
enum class Slot : int {
  kLambda,
  kXi,
  kSigma,
  kEta,
  kAlpha,
  kGamma,
  kKappa,
  kDelta,
  kTheta,
  kNu,
  kV11,
  kV12,
  kV22,
  kW11,
  kW12,
  kW22,
};

inline constexpr int kSlotCount = 16;
// Laurent variables: every slot plus the nilsoliton constant C.
inline constexpr int kVariableCount = kSlotCount + 1;
inline constexpr int kVariableC = kSlotCount;

std::string_view slot_name(Slot s);
std::optional<Slot> slot_from_name(std::string_view name);
bool is_block_slot(Slot s);
// 0 for V slots, 1 for W slots, -1 otherwise.
int block_of(Slot s);
// Display name of a variable index: "xi^2" style for scalar slots, "V11", "C".
std::string variable_name(int v);

using Monomial = std::array<std::int8_t, kVariableCount>;

Monomial unit_monomial();
Monomial variable_monomial(int v, int power = 1);
Monomial multiply(const Monomial& a, const Monomial& b);
Monomial inverse(const Monomial& a);
bool is_unit(const Monomial& a);
int total_degree(const Monomial& a);
std::string to_string(const Monomial& a);
// Inverse of to_string; DomainError on malformed text or odd slot exponents.
Monomial parse_monomial(std::string_view text);

// Laurent polynomial with rational coefficients in the variables above.
class Laurent {
 public:
  Laurent() = default;
  Laurent(const Rational& c);  // NOLINT(runtime/explicit)
  Laurent(const Monomial& mono, const Rational& c);
  static Laurent variable(int v, int power = 1) { return Laurent(variable_monomial(v, power), Rational(1)); }

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const Monomial& mono) const;
  // Single-term polynomial? Returns (monomial, coefficient).
  bool is_monomial() const { return terms_.size() == 1; }
  bool uses_variable(int v) const;

  void add_term(const Monomial& mono, const Rational& c);
  Laurent& operator+=(const Laurent& o);
  Laurent& operator-=(const Laurent& o);
  Laurent& operator*=(const Laurent& o);
  Laurent& operator*=(const Rational& s);
  Laurent operator-() const;
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator*(const Laurent& a, const Laurent& b);
  friend Laurent operator*(Laurent a, const Rational& s) { return a *= s; }
  friend bool operator==(const Laurent& a, const Laurent& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }

  // Inverse of a single-term polynomial; DomainError otherwise.
  Laurent monomial_inverse() const;
  // Replaces variable v by a nonzero rational constant.
  Laurent substitute(int v, const Rational& value) const;

  template <class F, class Values>
  F evaluate(const Values& values) const;

  std::string to_string() const;

 private:
  std::map<Monomial, Rational> terms_;
};

// Evaluates with values[v] giving the value of variable v (a field element).
template <class F, class Values>
F Laurent::evaluate(const Values& values) const {
  F total(0);
  for (const auto& [mono, c] : terms_) {
    F term = F(c);
    for (int v = 0; v < kVariableCount; ++v) {
      int e = mono[v];
      if (e == 0) continue;
      F base = values[v];
      if (e < 0) {
        base = F(1) / base;
        e = -e;
      }
      for (int i = 0; i < e; ++i) term *= base;
    }
    total += term;
  }
  return total;
}

}  // namespace nilsolv

#endif  // NILSOLV_LAURENT_H_
