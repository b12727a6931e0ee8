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

#include "nilsolv/freelie.h"

#include <gtest/gtest.h>

#include <cstdlib>
#include <random>
#include <set>
#include <string>

#include "nilsolv/errors.h"

namespace nilsolv {
namespace {

int trial_division_mobius(int n) {
  int primes = 0;
  for (int q = 2; q <= n; ++q) {
    if (n % q != 0) continue;
    int power = 0;
    while (n % q == 0) {
      n /= q;
      ++power;
    }
    if (power > 1) return 0;
    ++primes;
  }
  return primes % 2 == 0 ? 1 : -1;
}

// Number of Lyndon words of length k over m letters, by enumeration.
std::uint64_t lyndon_count(int m, int k) {
  std::uint64_t count = 0;
  std::vector<int> w(k, 0);
  while (true) {
    bool lyndon = true;
    for (int r = 1; r < k && lyndon; ++r) {
      // Every proper rotation must be strictly larger.
      for (int i = 0; i < k; ++i) {
        int a = w[i], b = w[(i + r) % k];
        if (a < b) break;
        if (a > b) {
          lyndon = false;
          break;
        }
        if (i == k - 1) lyndon = false;
      }
    }
    if (lyndon) ++count;
    int pos = k - 1;
    while (pos >= 0 && w[pos] == m - 1) w[pos--] = 0;
    if (pos < 0) break;
    ++w[pos];
  }
  return count;
}

Matrix<Rational> random_matrix(std::mt19937_64& rng, int m, int range = 5) {
  std::uniform_int_distribution<int> num(-range, range), den(1, 3);
  Matrix<Rational> a(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a(i, j) = Rational(num(rng), den(rng));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a(i, j).canonicalize();
  return a;
}

Element random_element(std::mt19937_64& rng, const FreeLieAlgebra& alg, int terms = 4) {
  std::uniform_int_distribution<int> idx(0, alg.dimension() - 1), num(-4, 4);
  Element x = alg.zero();
  for (int t = 0; t < terms; ++t) x.add_term(idx(rng), Rational(num(rng)));
  return x;
}

TEST(Mobius, SmallValues) {
  EXPECT_EQ(mobius(1), 1);
  EXPECT_EQ(mobius(4), 0);
  EXPECT_EQ(mobius(6), 1);
  EXPECT_THROW(mobius(0), DomainError);
  for (int n = 1; n <= 500; ++n) EXPECT_EQ(mobius(n), trial_division_mobius(n)) << n;
}

TEST(Witt, DimensionTable) {
  const std::uint64_t two[] = {2, 1, 2, 3, 6, 9, 18, 30, 56, 99, 186, 335, 630, 1161};
  const std::uint64_t three[] = {3, 3, 8, 18, 48, 116, 312};
  for (int k = 1; k <= 14; ++k) EXPECT_EQ(witt_dimension(2, k), two[k - 1]) << k;
  for (int k = 1; k <= 7; ++k) EXPECT_EQ(witt_dimension(3, k), three[k - 1]) << k;
}

TEST(Witt, ClosedFormsPerDegree) {
  for (std::int64_t m = 2; m <= 9; ++m) {
    EXPECT_EQ(witt_dimension(m, 1), static_cast<std::uint64_t>(m));
    EXPECT_EQ(witt_dimension(m, 2), static_cast<std::uint64_t>((m * m - m) / 2));
    EXPECT_EQ(witt_dimension(m, 3), static_cast<std::uint64_t>((m * m * m - m) / 3));
    EXPECT_EQ(witt_dimension(m, 4), static_cast<std::uint64_t>((m * m * m * m - m * m) / 4));
    const std::int64_t m5 = m * m * m * m * m;
    EXPECT_EQ(witt_dimension(m, 5), static_cast<std::uint64_t>((m5 - m) / 5));
    EXPECT_EQ(witt_dimension(m, 6), static_cast<std::uint64_t>((m5 * m - m * m * m - m * m + m) / 6));
    EXPECT_EQ(witt_dimension(m, 7), static_cast<std::uint64_t>((m5 * m * m - m) / 7));
  }
}

TEST(Witt, MatchesLyndonEnumeration) {
  for (int m = 2; m <= 4; ++m)
    for (int k = 1; k <= (m == 2 ? 12 : 7); ++k) EXPECT_EQ(witt_dimension(m, k), lyndon_count(m, k)) << m << "," << k;
}

TEST(Witt, RejectsBadArguments) {
  EXPECT_THROW(witt_dimension(1, 3), DomainError);
  EXPECT_THROW(witt_dimension(2, 0), DomainError);
}

TEST(Witt, GrowthBounds) {
  for (int m = 2; m <= 10; ++m)
    for (int k = 1; k <= (m == 2 ? 14 : 10); ++k) {
      const Integer d = static_cast<unsigned long>(witt_dimension(m, k));
      Integer mk, mh;
      mpz_ui_pow_ui(mk.get_mpz_t(), m, k);
      mpz_ui_pow_ui(mh.get_mpz_t(), m, k / 2 + 1);
      EXPECT_LE(d * k, mk);
      if (k >= 2) EXPECT_GT(d * k, mk - mh) << m << "," << k;
    }
}

TEST(Build, Dimensions) {
  EXPECT_EQ(build_algebra(2, 5).dimension(), 14);
  FreeLieAlgebra f33 = build_algebra(3, 3);
  EXPECT_EQ(f33.degree_size(1), 3);
  EXPECT_EQ(f33.degree_size(2), 3);
  EXPECT_EQ(f33.degree_size(3), 8);
  FreeLieAlgebra f21 = build_algebra(2, 1);
  EXPECT_TRUE(f21.structure().empty());
  EXPECT_TRUE(f21.bracket(f21.generator(1), f21.generator(2)).is_zero());
}

TEST(Build, HallCountsMatchWitt) {
  const std::pair<int, int> cases[] = {{2, 9}, {3, 5}, {4, 4}, {5, 3}};
  for (auto [m, p] : cases) {
    FreeLieAlgebra alg = build_algebra(m, p);
    for (int k = 1; k <= p; ++k) EXPECT_EQ(static_cast<std::uint64_t>(alg.degree_size(k)), witt_dimension(m, k));
  }
}

TEST(Build, ResourceCeilings) {
  EXPECT_THROW(build_algebra(2, 15), ResourceError);
  EXPECT_THROW(build_algebra(3, 8), ResourceError);
  BuildLimits small;
  small.max_dimension = 10;
  try {
    build_algebra(2, 5, small);
    FAIL() << "expected a resource error";
  } catch (const ResourceError& e) {
    EXPECT_EQ(e.required_dimension(), 14u);
  }
  EXPECT_THROW(build_algebra(1, 3), DomainError);
}

TEST(Build, EnvironmentCeiling) {
  setenv("NILSOLV_MAX_DIM", "13", 1);
  EXPECT_THROW(build_algebra(2, 5), ResourceError);
  setenv("NILSOLV_MAX_DIM", "14", 1);
  EXPECT_NO_THROW(build_algebra(2, 5));
  unsetenv("NILSOLV_MAX_DIM");
}

TEST(Build, ContentClassesPartitionDegrees) {
  FreeLieAlgebra alg = build_algebra(3, 4);
  for (int k = 1; k <= 4; ++k) {
    std::set<int> seen;
    for (const ContentClass& cls : alg.content_classes(k))
      for (int i : cls.indices) {
        EXPECT_EQ(alg.content(i), cls.content);
        EXPECT_TRUE(seen.insert(i).second);
      }
    EXPECT_EQ(static_cast<int>(seen.size()), alg.degree_size(k));
  }
}

TEST(NormalForm, KnownIdentities) {
  FreeLieAlgebra f24 = build_algebra(2, 4);
  EXPECT_EQ(normal_form(f24, {1, 2, 2, 1}), normal_form(f24, {1, 2, 1, 2}));
  EXPECT_TRUE(normal_form(f24, {1, 1}).is_zero());
  FreeLieAlgebra f33 = build_algebra(3, 3);
  Element jacobi = normal_form(f33, {1, 2, 3}) + normal_form(f33, {2, 3, 1}) + normal_form(f33, {3, 1, 2});
  EXPECT_TRUE(jacobi.is_zero());
  EXPECT_THROW(normal_form(f33, {1, 4}), DomainError);
  EXPECT_TRUE(normal_form(f33, {1, 2, 1, 2}).is_zero());
}

TEST(NormalForm, IdempotentOnBasis) {
  FreeLieAlgebra alg = build_algebra(3, 4);
  for (int i = alg.generators(); i < alg.dimension(); ++i) {
    const HallTree& t = alg.tree(i);
    EXPECT_EQ(alg.bracket(alg.basis_element(t.left), alg.basis_element(t.right)), alg.basis_element(i))
        << alg.tree_string(i);
  }
}

TEST(Bracket, BasicProperties) {
  FreeLieAlgebra alg = build_algebra(2, 5);
  Element e12 = alg.bracket(alg.generator(1), alg.generator(2));
  EXPECT_EQ(e12, normal_form(alg, {1, 2}));
  EXPECT_EQ(e12.terms().size(), 1u);
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    Element x = random_element(rng, alg);
    EXPECT_TRUE(alg.bracket(x, x).is_zero());
  }
  Element u = named::u(alg);
  Element direct = alg.bracket(normal_form(alg, {1, 2, 1}), normal_form(alg, {1, 2}));
  EXPECT_TRUE(u == direct || u == -direct);
  EXPECT_FALSE(u.is_zero());
  FreeLieAlgebra other = build_algebra(2, 4);
  EXPECT_THROW(alg.bracket(alg.generator(1), other.generator(2)), DomainError);
}

TEST(Bracket, AntisymmetryAndJacobiExhaustive) {
  for (auto [m, p] : {std::pair{2, 5}, std::pair{3, 3}, std::pair{3, 4}}) {
    FreeLieAlgebra alg = build_algebra(m, p);
    const int n = alg.dimension();
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (alg.degree(a) + alg.degree(b) > p) continue;
        ASSERT_EQ(alg.bracket_basis(a, b) + alg.bracket_basis(b, a), alg.zero());
        for (int c = 0; c < n; ++c) {
          if (alg.degree(a) + alg.degree(b) + alg.degree(c) > p) continue;
          Element s = alg.bracket(alg.bracket_basis(a, b), alg.basis_element(c)) +
                      alg.bracket(alg.bracket_basis(b, c), alg.basis_element(a)) +
                      alg.bracket(alg.bracket_basis(c, a), alg.basis_element(b));
          ASSERT_TRUE(s.is_zero()) << a << " " << b << " " << c;
        }
      }
  }
}

TEST(Bracket, DegreeAndContentAdditive) {
  FreeLieAlgebra alg = build_algebra(3, 4);
  for (const auto& entry : alg.structure())
    for (const auto& [k, c] : entry.value.terms()) {
      EXPECT_EQ(alg.degree(k), alg.degree(entry.a) + alg.degree(entry.b));
      for (int i = 0; i < 3; ++i) EXPECT_EQ(alg.content(k)[i], alg.content(entry.a)[i] + alg.content(entry.b)[i]);
    }
}

TEST(Content, Counts) {
  EXPECT_EQ(content({1, 2, 1, 1}, 2), (std::vector<int>{3, 1}));
  EXPECT_EQ(content({1, 2, 3}, 3), (std::vector<int>{1, 1, 1}));
  EXPECT_THROW(content({1, 3}, 2), DomainError);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> letter(1, 3), len(1, 4);
  for (int t = 0; t < 50; ++t) {
    LieWord x, y;
    for (int i = len(rng); i > 0; --i) x.push_back(letter(rng));
    for (int i = len(rng); i > 0; --i) y.push_back(letter(rng));
    LieWord xy = x;
    xy.insert(xy.end(), y.begin(), y.end());
    std::vector<int> sum = content(x, 3);
    for (int i = 0; i < 3; ++i) sum[i] += content(y, 3)[i];
    EXPECT_EQ(content(xy, 3), sum);
  }
}

TEST(Derivation, CanonicalTraces) {
  LinearOperator phi4 = canonical_derivation(build_algebra(2, 4));
  EXPECT_EQ(phi4.trace(), 22);
  EXPECT_EQ((phi4.matrix * phi4.matrix).trace(), 72);
  EXPECT_EQ(phi4.degree_block(3), Matrix<Rational>::identity(2) * Rational(3));
  LinearOperator phi7 = canonical_derivation(build_algebra(2, 7));
  EXPECT_EQ(phi7.trace(), 232);
  EXPECT_EQ((phi7.matrix * phi7.matrix).trace(), 1428);
}

TEST(Derivation, IdentityExtendsToCanonical) {
  FreeLieAlgebra alg = build_algebra(3, 4);
  EXPECT_EQ(extend_derivation(alg, Matrix<Rational>::identity(3)).matrix, canonical_derivation(alg).matrix);
  EXPECT_THROW(extend_derivation(alg, Matrix<Rational>::identity(2)), DomainError);
}

TEST(Derivation, ThetaKillsE12) {
  FreeLieAlgebra alg = build_algebra(2, 5);
  EXPECT_TRUE(named::theta(alg).apply(normal_form(alg, {1, 2})).is_zero());
}

TEST(Derivation, LeibnizAndGrading) {
  std::mt19937_64 rng(3);
  for (auto [m, p] : {std::pair{2, 5}, std::pair{3, 4}}) {
    FreeLieAlgebra alg = build_algebra(m, p);
    for (int t = 0; t < 10; ++t) {
      LinearOperator d = extend_derivation(alg, random_matrix(rng, m));
      EXPECT_TRUE(d.preserves_degrees());
      Element x = random_element(rng, alg), y = random_element(rng, alg);
      EXPECT_EQ(d.apply(alg.bracket(x, y)), alg.bracket(d.apply(x), y) + alg.bracket(x, d.apply(y)));
    }
  }
}

TEST(Derivation, TracelessHasTracelessBlocks) {
  std::mt19937_64 rng(5);
  FreeLieAlgebra alg = build_algebra(2, 5);
  for (int t = 0; t < 10; ++t) {
    Matrix<Rational> l = random_matrix(rng, 2);
    l(1, 1) = -l(0, 0);
    LinearOperator d = extend_derivation(alg, l);
    for (int k = 1; k <= 5; ++k) EXPECT_EQ(d.degree_block(k).trace(), 0);
  }
}

TEST(Automorphism, HomomorphismAndComposition) {
  std::mt19937_64 rng(9);
  FreeLieAlgebra alg = build_algebra(2, 5);
  EXPECT_EQ(extend_automorphism(alg, Matrix<Rational>::identity(2)).matrix, Matrix<Rational>::identity(14));
  Matrix<Rational> singular(2, 2);
  singular(0, 0) = 1;
  singular(1, 0) = 2;
  EXPECT_THROW(extend_automorphism(alg, singular), DomainError);
  for (int t = 0; t < 10; ++t) {
    Matrix<Rational> s = random_matrix(rng, 2), s2 = random_matrix(rng, 2);
    if (is_zero(determinant(s)) || is_zero(determinant(s2))) continue;
    LinearOperator r = extend_automorphism(alg, s), r2 = extend_automorphism(alg, s2);
    EXPECT_TRUE(r.preserves_degrees());
    Element x = random_element(rng, alg), y = random_element(rng, alg);
    EXPECT_EQ(r.apply(alg.bracket(x, y)), alg.bracket(r.apply(x), r.apply(y)));
    EXPECT_EQ(r.matrix * r2.matrix, extend_automorphism(alg, s * s2).matrix);
  }
}

TEST(Automorphism, IotaSwapsLabels) {
  FreeLieAlgebra alg = build_algebra(2, 5);
  EXPECT_EQ(named::iota(alg).apply(normal_form(alg, {1, 2, 1})), normal_form(alg, {2, 1, 2}));
}

TEST(Automorphism, InvariantLineInDegreeSix) {
  FreeLieAlgebra alg = build_algebra(2, 6);
  Element inv = named::invariant_I(alg);
  ASSERT_FALSE(inv.is_zero());
  Matrix<Rational> s(2, 2);
  s(0, 0) = Rational(2);
  s(1, 1) = Rational(-3, 5);
  const Rational det = s(0, 0) * s(1, 1);
  EXPECT_EQ(extend_automorphism(alg, s).apply(inv), inv * (det * det * det));
}

TEST(Adjoint, GeneratorActionInjectiveAboveDegreeOne) {
  for (auto [m, p] : {std::pair{2, 8}, std::pair{3, 5}, std::pair{4, 4}}) {
    FreeLieAlgebra alg = build_algebra(m, p);
    for (int k = 2; k < p; ++k) {
      Matrix<Rational> ad(alg.degree_size(k + 1), alg.degree_size(k));
      for (int j = alg.degree_begin(k); j < alg.degree_end(k); ++j) {
        const Element image = alg.bracket_basis(0, j);
        for (const auto& [i, c] : image.terms()) ad(i - alg.degree_begin(k + 1), j - alg.degree_begin(k)) = c;
      }
      EXPECT_EQ(rank(ad), static_cast<std::size_t>(alg.degree_size(k))) << m << "," << p << "," << k;
    }
  }
}

}  // namespace
}  // namespace nilsolv
