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

#include "nilsolv/laurent.h"

#include <sstream>
#include <string>

#include "nilsolv/errors.h"

namespace nilsolv {

namespace {

constexpr std::string_view kSlotNames[kSlotCount] = {"lambda", "xi",  "sigma", "eta", "alpha", "gamma",
                                                     "kappa",  "delta", "theta", "nu",  "V11",   "V12",
                                                     "V22",    "W11", "W12",   "W22"};

}  // namespace

std::string_view slot_name(Slot s) { return kSlotNames[static_cast<int>(s)]; }

std::optional<Slot> slot_from_name(std::string_view name) {
  for (int i = 0; i < kSlotCount; ++i)
    if (kSlotNames[i] == name) return static_cast<Slot>(i);
  return std::nullopt;
}

bool is_block_slot(Slot s) { return static_cast<int>(s) >= static_cast<int>(Slot::kV11); }

int block_of(Slot s) {
  const int i = static_cast<int>(s);
  if (i >= static_cast<int>(Slot::kW11)) return 1;
  if (i >= static_cast<int>(Slot::kV11)) return 0;
  return -1;
}

std::string variable_name(int v) {
  if (v == kVariableC) return "C";
  const Slot s = static_cast<Slot>(v);
  if (is_block_slot(s)) return std::string(slot_name(s));
  return std::string(slot_name(s)) + "^2";
}

Monomial unit_monomial() { return Monomial{}; }

Monomial variable_monomial(int v, int power) {
  Monomial m{};
  m[v] = static_cast<std::int8_t>(power);
  return m;
}

Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial r{};
  for (int v = 0; v < kVariableCount; ++v) {
    const int e = a[v] + b[v];
    if (e > 127 || e < -127) throw ResourceError("monomial exponent overflow", 0);
    r[v] = static_cast<std::int8_t>(e);
  }
  return r;
}

Monomial inverse(const Monomial& a) {
  Monomial r{};
  for (int v = 0; v < kVariableCount; ++v) r[v] = static_cast<std::int8_t>(-a[v]);
  return r;
}

bool is_unit(const Monomial& a) {
  for (auto e : a)
    if (e != 0) return false;
  return true;
}

int total_degree(const Monomial& a) {
  int d = 0;
  for (auto e : a) d += e;
  return d;
}

std::string to_string(const Monomial& a) {
  std::string out;
  for (int v = 0; v < kVariableCount; ++v) {
    const int e = a[v];
    if (e == 0) continue;
    if (!out.empty()) out += "*";
    if (v == kVariableC || is_block_slot(static_cast<Slot>(v))) {
      out += variable_name(v);
      if (e != 1) out += "^" + std::to_string(e);
    } else {
      out += std::string(slot_name(static_cast<Slot>(v))) + "^" + std::to_string(2 * e);
    }
  }
  return out.empty() ? "1" : out;
}

Monomial parse_monomial(std::string_view text) {
  Monomial out{};
  if (text == "1") return out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('*', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view factor = text.substr(pos, end - pos);
    const std::size_t caret = factor.find('^');
    const std::string_view name = factor.substr(0, caret);
    int e = 1;
    if (caret != std::string_view::npos) {
      try {
        std::size_t used = 0;
        const std::string digits(factor.substr(caret + 1));
        e = std::stoi(digits, &used);
        if (used != digits.size()) throw DomainError("");
      } catch (const std::exception&) {
        throw DomainError("malformed monomial: " + std::string(text));
      }
    }
    int v = -1;
    if (name == "C") {
      v = kVariableC;
    } else if (auto s = slot_from_name(name)) {
      v = static_cast<int>(*s);
      if (!is_block_slot(*s)) {
        if (caret == std::string_view::npos || e % 2 != 0) throw DomainError("malformed monomial: " + std::string(text));
        e /= 2;
      }
    }
    if (v < 0 || out[v] != 0 || e == 0 || e > 127 || e < -127)
      throw DomainError("malformed monomial: " + std::string(text));
    out[v] = static_cast<std::int8_t>(e);
    pos = end + 1;
  }
  return out;
}

Laurent::Laurent(const Rational& c) { add_term(unit_monomial(), c); }

Laurent::Laurent(const Monomial& mono, const Rational& c) { add_term(mono, c); }

Rational Laurent::coefficient(const Monomial& mono) const {
  auto it = terms_.find(mono);
  return it == terms_.end() ? Rational(0) : it->second;
}

bool Laurent::uses_variable(int v) const {
  for (const auto& [mono, c] : terms_)
    if (mono[v] != 0) return true;
  return false;
}

void Laurent::add_term(const Monomial& mono, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(mono, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Laurent& Laurent::operator+=(const Laurent& o) {
  for (const auto& [mono, c] : o.terms_) add_term(mono, c);
  return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) {
  for (const auto& [mono, c] : o.terms_) add_term(mono, -c);
  return *this;
}

Laurent operator*(const Laurent& a, const Laurent& b) {
  Laurent r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(multiply(ma, mb), ca * cb);
  return r;
}

Laurent& Laurent::operator*=(const Laurent& o) { return *this = *this * o; }

Laurent& Laurent::operator*=(const Rational& s) {
  if (sgn(s) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [mono, c] : terms_) c *= s;
  return *this;
}

Laurent Laurent::operator-() const {
  Laurent r = *this;
  for (auto& [mono, c] : r.terms_) c = -c;
  return r;
}

Laurent Laurent::monomial_inverse() const {
  if (!is_monomial()) throw DomainError("only single-term Laurent polynomials are invertible");
  const auto& [mono, c] = *terms_.begin();
  return Laurent(inverse(mono), Rational(1) / c);
}

Laurent Laurent::substitute(int v, const Rational& value) const {
  if (sgn(value) == 0) throw DomainError("substitution by zero");
  Laurent r;
  for (const auto& [mono, c] : terms_) {
    Monomial m = mono;
    const int e = m[v];
    m[v] = 0;
    Rational factor = 1;
    for (int i = 0; i < (e < 0 ? -e : e); ++i) factor *= value;
    if (e < 0) factor = 1 / factor;
    r.add_term(m, c * factor);
  }
  return r;
}

std::string Laurent::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mono, c] : terms_) {
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    first = false;
    const Rational a = abs(c);
    if (is_unit(mono)) {
      os << a.get_str();
    } else {
      if (a != 1) os << a.get_str() << "*";
      os << nilsolv::to_string(mono);
    }
  }
  return os.str();
}

}  // namespace nilsolv
