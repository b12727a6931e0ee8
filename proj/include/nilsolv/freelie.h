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

#ifndef NILSOLV_FREELIE_H_
#define NILSOLV_FREELIE_H_

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nilsolv/matrix.h"
#include "nilsolv/rational.h"

namespace nilsolv {

// Generator labels i_1 ... i_k (1-based) of the left-normed bracket
// [[...[e_{i1}, e_{i2}], ...], e_{ik}].
using LieWord = std::vector<int>;

// Node of the Hall family. Letters have letter >= 1 and no children.
struct HallTree {
  int left = -1;
  int right = -1;
  int letter = 0;
  int degree = 1;
  std::vector<int> content;
};

// Sparse coordinates over the Hall basis of one f(m, p). Zero coefficients are
// never stored.
class Element {
 public:
  Element() = default;
  Element(int m, int p) : m_(m), p_(p) {}

  int generators() const { return m_; }
  int step() const { return p_; }
  const std::map<int, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(int index) const;

  void add_term(int index, const Rational& c);

  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& operator*=(const Rational& s);
  Element operator-() const;
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(Element a, const Rational& s) { return a *= s; }
  friend Element operator*(const Rational& s, Element a) { return a *= s; }
  friend bool operator==(const Element& a, const Element& b) {
    return a.m_ == b.m_ && a.p_ == b.p_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

 private:
  void check_compatible(const Element& o) const;

  int m_ = 0;
  int p_ = 0;
  std::map<int, Rational> terms_;
};

struct ContentClass {
  std::vector<int> content;
  std::vector<int> indices;
};

struct BuildLimits {
  int max_step_two_generators = 14;
  int max_step_default = 7;
  std::uint64_t max_dimension = 2048;

  // Defaults, with max_dimension overridden by NILSOLV_MAX_DIM when set.
  static BuildLimits from_environment();
};

class FreeLieAlgebra {
 public:
  FreeLieAlgebra(int m, int p);

  int generators() const { return m_; }
  int step() const { return p_; }
  int dimension() const { return static_cast<int>(trees_.size()); }

  // Indices of degree k form the half-open range [degree_begin(k), degree_end(k)).
  int degree_begin(int k) const { return offsets_.at(k - 1); }
  int degree_end(int k) const { return offsets_.at(k); }
  int degree_size(int k) const { return degree_end(k) - degree_begin(k); }

  const HallTree& tree(int index) const { return trees_.at(index); }
  int degree(int index) const { return trees_.at(index).degree; }
  const std::vector<int>& content(int index) const { return trees_.at(index).content; }
  const std::vector<ContentClass>& content_classes(int k) const { return classes_.at(k - 1); }

  Element zero() const { return Element(m_, p_); }
  Element basis_element(int index) const;
  // e_i for 1 <= i <= m.
  Element generator(int i) const;

  Element bracket_basis(int a, int b) const;
  Element bracket(const Element& x, const Element& y) const;

  // Nonzero brackets [b_a, b_b] with a < b, ordered by (a, b).
  struct StructureEntry {
    int a;
    int b;
    Element value;
  };
  const std::vector<StructureEntry>& structure() const { return structure_; }

  // Nested-bracket rendering of a basis element, e.g. "[[1,2],1]".
  std::string tree_string(int index) const;

  // Hall-order rank; letters are ordered e_m < ... < e_1 below all brackets.
  int hall_rank(int index) const { return index < m_ ? m_ - 1 - index : index; }

 private:
  void generate_trees();
  void compute_structure();

  int m_;
  int p_;
  std::vector<HallTree> trees_;
  std::vector<int> offsets_;
  std::vector<std::vector<ContentClass>> classes_;
  std::vector<StructureEntry> structure_;
  std::unordered_map<std::uint64_t, std::size_t> lookup_;
};

// A linear map on f(m, p) in Hall coordinates (columns are images of basis
// vectors) together with the degree layout of the carrying algebra.
struct LinearOperator {
  int m = 0;
  int p = 0;
  std::vector<int> degree_offsets;
  Matrix<Rational> matrix;

  Matrix<Rational> degree_block(int k) const;
  bool preserves_degrees() const;
  Element apply(const Element& x) const;
  Rational trace() const { return matrix.trace(); }
};

int mobius(int n);
std::uint64_t witt_dimension(int m, int k);
std::uint64_t free_dimension(int m, int p);

FreeLieAlgebra build_algebra(int m, int p, const BuildLimits& limits = BuildLimits::from_environment());

Element normal_form(const FreeLieAlgebra& alg, const LieWord& word);
std::vector<int> content(const LieWord& word, int m);

LinearOperator canonical_derivation(const FreeLieAlgebra& alg);
// L acts on the generators: L e_j = sum_i L(i, j) e_i.
LinearOperator extend_derivation(const FreeLieAlgebra& alg, const Matrix<Rational>& generator_map);
LinearOperator extend_automorphism(const FreeLieAlgebra& alg, const Matrix<Rational>& generator_map);

// Frequently used vectors and operators of the two-generator algebras.
namespace named {

// e_{12...1} = [[e_1, e_2], e_1, ..., e_1] of degree k >= 2.
Element bold_e(const FreeLieAlgebra& alg, int k);
Element u(const FreeLieAlgebra& alg);          // [e_121, e_12]
Element z(const FreeLieAlgebra& alg);          // [e_1211, e_12]
Element invariant_I(const FreeLieAlgebra& alg);  // [e_121, e_122]
// q_ijk = e_kjii + e_ijki + e_ijik
Element q(const FreeLieAlgebra& alg, int i, int j, int k);
// r_ijk = [e_ij, e_ik]
Element r(const FreeLieAlgebra& alg, int i, int j, int k);

Matrix<Rational> swap_generators(int m, int i, int j);
Matrix<Rational> elementary(int m, int row, int col);  // E_{row,col}, 1-based

LinearOperator theta(const FreeLieAlgebra& alg);  // rho(L), L e_1 = e_2, L e_2 = 0
LinearOperator iota(const FreeLieAlgebra& alg);   // R(swap of e_1 and e_2)

}  // namespace named

}  // namespace nilsolv

#endif  // NILSOLV_FREELIE_H_
