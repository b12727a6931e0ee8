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


// Exact scalar types, dense linear algebra, univariate and Laurent polynomials.

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "nilsolv/errors.h"
#include "nilsolv/laurent.h"
#include "nilsolv/matrix.h"
#include "nilsolv/polynomial.h"
#include "nilsolv/quadratic.h"
#include "nilsolv/rational.h"
#include "test_support.h"

namespace nilsolv {
namespace {

using testing::random_matrix;
using testing::frac;
using testing::random_rational;

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(parse_rational("3/6"), frac(1, 2));
  EXPECT_EQ(parse_rational("-7"), Rational(-7));
  EXPECT_EQ(to_string(frac(4, -6)), "-2/3");
  EXPECT_EQ(to_string(parse_rational("5")), "5/1");
  EXPECT_THROW(parse_rational("1/0"), DomainError);
  EXPECT_THROW(parse_rational("x"), DomainError);
  EXPECT_THROW(parse_rational(""), DomainError);
  EXPECT_THROW(parse_rational("1/2/3"), DomainError);
}

TEST(Rational, RoundTrip) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const Rational q = random_rational(rng, -50, 50, 97);
    EXPECT_EQ(parse_rational(to_string(q)), q);
  }
}

TEST(Quadratic, ArithmeticAgreesWithDoubles) {
  std::mt19937_64 rng(2);
  for (long d : {2L, 3L, 745L}) {
    for (int i = 0; i < 100; ++i) {
      const QuadraticNumber x(random_rational(rng, -5, 5), random_rational(rng, -5, 5), d);
      const QuadraticNumber y(random_rational(rng, -5, 5), random_rational(rng, -5, 5), d);
      EXPECT_NEAR((x + y).to_double(), x.to_double() + y.to_double(), 1e-9);
      EXPECT_NEAR((x * y).to_double(), x.to_double() * y.to_double(), 1e-7);
      if (y.sign() != 0) {
        EXPECT_NEAR((x / y).to_double(), x.to_double() / y.to_double(), 1e-6 * (1 + std::abs(x.to_double() / y.to_double())));
        EXPECT_EQ((x / y) * y, x);
      }
      EXPECT_EQ(x.sign(), (x.to_double() > 0) - (x.to_double() < 0));
    }
  }
}

TEST(Quadratic, SignOfNearCancellation) {
  // Convergents of sqrt 2 alternate around it within 1e-6.
  EXPECT_EQ(QuadraticNumber(frac(99, 70), Rational(-1), 2).sign(), 1);
  EXPECT_EQ(QuadraticNumber(frac(1393, 985), Rational(-1), 2).sign(), -1);
  EXPECT_EQ(QuadraticNumber(frac(577, 408), Rational(-1), 2).sign(), 1);
  EXPECT_EQ(QuadraticNumber(frac(-577, 408), Rational(1), 2).sign(), -1);
  EXPECT_EQ(QuadraticNumber(Rational(-3), Rational(1), 9).sign(), 0);
}

TEST(Quadratic, ConjugateAndNorm) {
  const QuadraticNumber x(frac(131, 2928), frac(5, 2928), 745);
  const QuadraticNumber n = x * x.conjugate();
  EXPECT_TRUE(n.is_rational());
  EXPECT_EQ(n.rational_part(), frac(131 * 131 - 25 * 745, 2928L * 2928));
}

TEST(Quadratic, MixingFieldsIsRejected) {
  const QuadraticNumber a(0, 1, 2), b(0, 1, 3);
  EXPECT_THROW(a + b, DomainError);
  EXPECT_NO_THROW(a + QuadraticNumber(frac(1, 2)));
}

TEST(Matrix, InverseAndDeterminant) {
  std::mt19937_64 rng(3);
  for (int n = 1; n <= 6; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      const Matrix<Rational> a = random_matrix(rng, n);
      const Rational det = determinant(a);
      if (sgn(det) == 0) {
        EXPECT_THROW(inverse(a), DomainError);
        continue;
      }
      const Matrix<Rational> inv = inverse(a);
      EXPECT_EQ(a * inv, Matrix<Rational>::identity(n));
      EXPECT_EQ(determinant(inv) * det, 1);
      const Matrix<Rational> b = random_matrix(rng, n);
      EXPECT_EQ(determinant(a * b), det * determinant(b));
    }
  }
}

TEST(Matrix, NullspaceAndRank) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    // Rank-deficient by construction: third column = first + second.
    Matrix<Rational> a(4, 5);
    for (int i = 0; i < 4; ++i) {
      for (int j : {0, 1, 3, 4}) a(i, j) = random_rational(rng, -3, 3);
      a(i, 2) = a(i, 0) + a(i, 1);
    }
    const auto ns = nullspace(a);
    EXPECT_EQ(rank(a) + ns.size(), 5u);
    EXPECT_GE(ns.size(), 1u);
    for (const auto& v : ns)
      for (int i = 0; i < 4; ++i) {
        Rational s = 0;
        for (int j = 0; j < 5; ++j) s += a(i, j) * v[j];
        EXPECT_EQ(s, 0);
      }
  }
}

TEST(Matrix, SolveReportsInconsistency) {
  Matrix<Rational> a(2, 2);
  a(0, 0) = 1;
  a(0, 1) = 1;
  a(1, 0) = 2;
  a(1, 1) = 2;
  EXPECT_FALSE(solve(a, std::vector<Rational>{1, 3}).has_value());
  const auto x = solve(a, std::vector<Rational>{1, 2});
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ((*x)[0] + (*x)[1], 1);
}

Polynomial from_roots(const std::vector<Rational>& roots) {
  Polynomial p = Polynomial::constant(1);
  for (const Rational& r : roots) p *= Polynomial({-r, Rational(1)});
  return p;
}

TEST(Polynomial, DivisionIdentity) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Rational> a(6), b(3);
    for (auto& c : a) c = random_rational(rng, -4, 4);
    for (auto& c : b) c = random_rational(rng, -4, 4);
    b.back() = 1;
    const Polynomial pa(a), pb(b);
    const auto [q, r] = pa.divmod(pb);
    EXPECT_EQ(q * pb + r, pa);
    EXPECT_LT(r.degree(), pb.degree());
  }
  EXPECT_THROW(Polynomial::x().divmod(Polynomial()), DomainError);
}

TEST(Polynomial, GcdOfProducts) {
  const Polynomial common = from_roots({frac(1, 2), Rational(3)});
  const Polynomial a = common * from_roots({Rational(-1)});
  const Polynomial b = common * from_roots({Rational(7), frac(2, 3)});
  EXPECT_EQ(gcd(a, b).monic(), common.monic());
  EXPECT_EQ(squarefree_part(common * common).monic(), common.monic());
}

TEST(Polynomial, SturmCountsMatchKnownRoots) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Rational> roots;
    std::uniform_int_distribution<int> count(1, 5);
    const int n = count(rng);
    for (int i = 0; i < n; ++i) roots.push_back(random_rational(rng, -6, 6, 4));
    const Polynomial p = from_roots(roots);
    const auto sturm = sturm_sequence(p);
    for (int probe = 0; probe < 5; ++probe) {
      Rational lo = random_rational(rng, -8, 8, 3), hi = random_rational(rng, -8, 8, 3);
      if (hi < lo) std::swap(lo, hi);
      std::set<Rational> distinct;
      for (const Rational& r : roots)
        if (lo < r && r <= hi) distinct.insert(r);
      EXPECT_EQ(count_roots(sturm, lo, hi), static_cast<int>(distinct.size()));
    }
  }
}

TEST(Polynomial, PositiveRootIsolation) {
  const Polynomial p({Rational(-1), Rational(-524), Rational(5856)});
  const auto iv = isolate_positive_roots(p);
  ASSERT_EQ(iv.size(), 1u);
  EXPECT_LT(iv[0].lo.get_d(), 0.091351);
  EXPECT_GE(iv[0].hi.get_d(), 0.091350);
  const auto roots = exact_positive_roots(p);
  ASSERT_EQ(roots.size(), 1u);
  EXPECT_EQ(p.evaluate(roots[0]), QuadraticNumber(0));
  EXPECT_EQ(roots[0].radicand(), 745);
  EXPECT_EQ(minimal_polynomial(roots[0]), p);
}

TEST(Polynomial, RationalRootsAndOneSigned) {
  const Polynomial p = from_roots({frac(9, 4), Rational(-2), Rational(5)});
  const auto roots = exact_positive_roots(p);
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_EQ(roots[0], QuadraticNumber(frac(9, 4)));
  EXPECT_EQ(roots[1], QuadraticNumber(5));
  EXPECT_TRUE(Polynomial({Rational(99), Rational(171), Rational(16)}).one_signed());
  EXPECT_FALSE(p.one_signed());
  EXPECT_TRUE(exact_positive_roots(Polynomial({Rational(99), Rational(171), Rational(16)})).empty());
  // x^3 - 2 has an irrational cubic root.
  EXPECT_THROW(exact_positive_roots(Polynomial({Rational(-2), Rational(0), Rational(0), Rational(1)})),
               UndecidedError);
}

TEST(Polynomial, StripZeroRootsAndPrimitive) {
  const Polynomial p({Rational(0), Rational(0), frac(3, 2), frac(-9, 4)});
  EXPECT_EQ(p.strip_zero_roots(), Polynomial({frac(3, 2), frac(-9, 4)}));
  EXPECT_EQ(p.strip_zero_roots().primitive(), Polynomial({Rational(-2), Rational(3)}));
  EXPECT_EQ(Polynomial({Rational(99), Rational(171), Rational(16)}).to_string("xi^2"), "16*(xi^2)^2 + 171*xi^2 + 99");
}

TEST(Laurent, MonomialTextRoundTrip) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> e(-3, 3), pick(0, kVariableCount - 1);
  for (int trial = 0; trial < 200; ++trial) {
    Monomial mono = unit_monomial();
    for (int k = 0; k < 3; ++k) {
      const int v = pick(rng);
      const bool block = v < kSlotCount && is_block_slot(static_cast<Slot>(v));
      mono[v] = static_cast<std::int8_t>(block ? 1 : e(rng));
    }
    EXPECT_EQ(parse_monomial(to_string(mono)), mono) << to_string(mono);
  }
  EXPECT_EQ(to_string(parse_monomial("xi^-2*sigma^2")), "xi^-2*sigma^2");
  EXPECT_THROW(parse_monomial("xi^3"), DomainError);
  EXPECT_THROW(parse_monomial("omega^2"), DomainError);
  EXPECT_THROW(parse_monomial("xi^2*xi^2"), DomainError);
}

TEST(Laurent, ArithmeticAndEvaluation) {
  const int xi = static_cast<int>(Slot::kXi), sigma = static_cast<int>(Slot::kSigma);
  Laurent a = Laurent::variable(xi, -1) * Laurent::variable(sigma) * frac(1, 2);
  Laurent b = Laurent::variable(xi) + Laurent(frac(-1, 2));
  std::array<Rational, kVariableCount> v{};
  v[xi] = frac(9, 4);
  v[sigma] = frac(9, 2);
  EXPECT_EQ(a.evaluate<Rational>(v), 1);
  EXPECT_EQ((a * b).evaluate<Rational>(v), frac(7, 4));
  EXPECT_EQ((a - a).is_zero(), true);
  EXPECT_EQ(a.monomial_inverse() * a, Laurent(Rational(1)));
  EXPECT_THROW(b.monomial_inverse(), DomainError);
  EXPECT_EQ(b.substitute(xi, frac(1, 2)), Laurent());
  EXPECT_TRUE(a.uses_variable(sigma));
  EXPECT_FALSE(b.uses_variable(sigma));
}

}  // namespace
}  // namespace nilsolv
