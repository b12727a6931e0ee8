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

#include "nilsolv/polynomial.h"

#include <algorithm>
#include <sstream>

#include "nilsolv/errors.h"

namespace nilsolv {

Polynomial::Polynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) {
  for (Rational& c : coeffs_) c.canonicalize();
  trim();
}

void Polynomial::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

Rational Polynomial::coefficient(int i) const {
  return i >= 0 && i < static_cast<int>(coeffs_.size()) ? coeffs_[i] : Rational(0);
}

Rational Polynomial::evaluate(const Rational& t) const {
  Rational r = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * t + *it;
  return r;
}

QuadraticNumber Polynomial::evaluate(const QuadraticNumber& t) const {
  QuadraticNumber r;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * t + QuadraticNumber(*it);
  return r;
}

double Polynomial::evaluate(double t) const {
  double r = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * t + it->get_d();
  return r;
}

Polynomial Polynomial::derivative() const {
  std::vector<Rational> d;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * static_cast<long>(i));
  return Polynomial(std::move(d));
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  if (is_zero() || o.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Rational> r(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) r[i + j] += coeffs_[i] * o.coeffs_[j];
  coeffs_ = std::move(r);
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& s) {
  for (Rational& c : coeffs_) c *= s;
  trim();
  return *this;
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& d) const {
  if (d.is_zero()) throw DomainError("polynomial division by zero");
  Polynomial r = *this;
  if (r.degree() < d.degree()) return {Polynomial(), r};
  std::vector<Rational> q(r.degree() - d.degree() + 1);
  while (!r.is_zero() && r.degree() >= d.degree()) {
    const int shift = r.degree() - d.degree();
    const Rational f = r.leading() / d.leading();
    q[shift] = f;
    for (int i = 0; i <= d.degree(); ++i) r.coeffs_[i + shift] -= f * d.coeffs_[i];
    r.trim();
  }
  return {Polynomial(std::move(q)), r};
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  Polynomial r = *this;
  r *= Rational(1) / leading();
  return r;
}

Polynomial Polynomial::primitive() const {
  if (is_zero()) return *this;
  Integer l = lcm_of_denominators(coeffs_.data(), coeffs_.data() + coeffs_.size());
  std::vector<Rational> c;
  Integer g = 0;
  for (const Rational& q : coeffs_) {
    Rational v = q * l;
    c.push_back(v);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num().get_mpz_t());
  }
  if (sgn(c.back()) < 0) g = -g;
  for (Rational& v : c) v /= g;
  return Polynomial(std::move(c));
}

Polynomial Polynomial::strip_zero_roots() const {
  auto first = std::find_if(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return sgn(c) != 0; });
  return Polynomial(std::vector<Rational>(first, coeffs_.end()));
}

bool Polynomial::one_signed() const {
  int sign = 0;
  for (const Rational& c : coeffs_) {
    if (sgn(c) == 0) continue;
    if (sign == 0) sign = sgn(c);
    if (sgn(c) != sign) return false;
  }
  return sign != 0;
}

std::string Polynomial::to_string(const std::string& variable) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  // A compound variable such as "xi^2" is parenthesized before taking powers.
  const bool compound = variable.find_first_of("^*/") != std::string::npos;
  const std::string base = compound ? "(" + variable + ")" : variable;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = coeffs_[i];
    if (sgn(c) == 0) continue;
    Rational a = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = a == 1 && i > 0;
    if (!unit) os << a.get_str();
    if (i > 0) {
      if (!unit) os << "*";
      if (i > 1) os << base << "^" << i;
      else os << variable;
    }
  }
  return os.str();
}

Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Polynomial squarefree_part(const Polynomial& p) {
  if (p.degree() <= 0) return p;
  return p.divmod(gcd(p, p.derivative())).first.monic();
}

std::vector<Polynomial> sturm_sequence(const Polynomial& p) {
  std::vector<Polynomial> seq{p, p.derivative()};
  while (!seq.back().is_zero()) {
    Polynomial r = seq[seq.size() - 2].divmod(seq.back()).second;
    r *= Rational(-1);
    if (r.is_zero()) break;
    seq.push_back(r);
  }
  if (seq.back().is_zero()) seq.pop_back();
  return seq;
}

namespace {

int sign_changes(const std::vector<Polynomial>& seq, const Rational& t) {
  int changes = 0, last = 0;
  for (const Polynomial& q : seq) {
    int s = sgn(q.evaluate(t));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// Cauchy bound: every root has absolute value below it.
Rational root_bound(const Polynomial& p) {
  Rational m = 0;
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, Rational(abs(p.coefficient(i) / p.leading())));
  return m + 1;
}

std::vector<Integer> divisors(Integer n) {
  n = abs(n);
  if (n == 0) return {};
  if (n > Integer("1000000000000")) throw UndecidedError("rational root test: coefficient too large to factor");
  std::vector<Integer> small, large;
  for (Integer d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d * d != n) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

// Largest square s^2 dividing n, returned as (s, n / s^2).
std::pair<Integer, Integer> square_split(Integer n) {
  Integer s = 1;
  for (Integer q = 2; q * q <= n; ++q)
    while (n % (q * q) == 0) {
      n /= q * q;
      s *= q;
    }
  return {s, n};
}

}  // namespace

int count_roots(const std::vector<Polynomial>& sturm, const Rational& lo, const Rational& hi) {
  return sign_changes(sturm, lo) - sign_changes(sturm, hi);
}

std::vector<RootInterval> isolate_positive_roots(const Polynomial& p) {
  std::vector<RootInterval> out;
  if (p.degree() <= 0) return out;
  const Polynomial sf = squarefree_part(p);
  const auto seq = sturm_sequence(sf);
  std::vector<RootInterval> stack{{Rational(0), root_bound(sf)}};
  while (!stack.empty()) {
    RootInterval iv = stack.back();
    stack.pop_back();
    const int n = count_roots(seq, iv.lo, iv.hi);
    if (n == 0) continue;
    if (n == 1) {
      out.push_back(iv);
      continue;
    }
    const Rational mid = (iv.lo + iv.hi) / 2;
    stack.push_back({mid, iv.hi});
    stack.push_back({iv.lo, mid});
  }
  std::sort(out.begin(), out.end(), [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
  return out;
}

std::vector<QuadraticNumber> exact_positive_roots(const Polynomial& p) {
  std::vector<QuadraticNumber> roots;
  Polynomial rest = squarefree_part(p).strip_zero_roots().primitive();
  if (rest.degree() <= 0) return roots;
  // Rational root test on the primitive integer polynomial.
  const Integer lead = rest.leading().get_num();
  const Integer tail = rest.coefficient(0).get_num();
  for (const Integer& num : divisors(tail)) {
    for (const Integer& den : divisors(lead)) {
      Rational cand(num, den);
      cand.canonicalize();
      if (sgn(rest.evaluate(cand)) != 0) continue;
      if (std::find(roots.begin(), roots.end(), QuadraticNumber(cand)) == roots.end()) roots.emplace_back(cand);
      rest = rest.divmod(Polynomial({-cand, Rational(1)})).first.primitive();
      if (rest.degree() <= 0) break;
    }
    if (rest.degree() <= 0) break;
  }
  if (rest.degree() == 2) {
    // a x^2 + b x + c with rational-free discriminant.
    const Rational a = rest.coefficient(2), b = rest.coefficient(1), c = rest.coefficient(0);
    const Rational disc = b * b - 4 * a * c;
    if (sgn(disc) >= 0) {
      Integer num = disc.get_num() * disc.get_den();
      auto [s, d] = square_split(num);
      const Rational scale = Rational(s, disc.get_den()) / (2 * a);
      for (int sign : {-1, 1}) {
        QuadraticNumber r(-b / (2 * a), sign * scale, mpz_get_si(d.get_mpz_t()));
        if (r.sign() > 0) roots.push_back(r);
      }
    }
  } else if (rest.degree() > 2) {
    if (!isolate_positive_roots(rest).empty())
      throw UndecidedError("positive roots of degree > 2 over Q are not supported");
  }
  std::vector<QuadraticNumber> positive;
  for (const QuadraticNumber& r : roots)
    if (r.sign() > 0) positive.push_back(r);
  std::sort(positive.begin(), positive.end());
  return positive;
}

Polynomial minimal_polynomial(const QuadraticNumber& x) {
  if (x.is_rational()) return Polynomial({-x.rational_part(), Rational(1)}).primitive();
  const Rational& a = x.rational_part();
  const Rational& b = x.irrational_part();
  // (t - a)^2 - b^2 d
  return Polynomial({a * a - b * b * x.radicand(), -2 * a, Rational(1)}).primitive();
}

}  // namespace nilsolv
