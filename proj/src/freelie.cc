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

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <limits>
#include <string>

#include "nilsolv/errors.h"

namespace nilsolv {

namespace {

std::uint64_t pair_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

}  // namespace

// ---- Element ----

Rational Element::coefficient(int index) const {
  auto it = terms_.find(index);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Element::add_term(int index, const Rational& c) {
  if (nilsolv::is_zero(c)) return;
  auto [it, inserted] = terms_.try_emplace(index, c);
  if (!inserted) {
    it->second += c;
    if (nilsolv::is_zero(it->second)) terms_.erase(it);
  }
}

void Element::check_compatible(const Element& o) const {
  if (m_ != o.m_ || p_ != o.p_) throw DomainError("elements belong to different algebras");
}

Element& Element::operator+=(const Element& o) {
  if (m_ == 0 && terms_.empty()) {
    m_ = o.m_;
    p_ = o.p_;
  } else if (o.m_ != 0 || !o.terms_.empty()) {
    check_compatible(o);
  }
  for (const auto& [i, c] : o.terms_) add_term(i, c);
  return *this;
}

Element& Element::operator-=(const Element& o) {
  if (m_ == 0 && terms_.empty()) {
    m_ = o.m_;
    p_ = o.p_;
  } else if (o.m_ != 0 || !o.terms_.empty()) {
    check_compatible(o);
  }
  for (const auto& [i, c] : o.terms_) add_term(i, -c);
  return *this;
}

Element& Element::operator*=(const Rational& s) {
  if (nilsolv::is_zero(s)) {
    terms_.clear();
    return *this;
  }
  for (auto& [i, c] : terms_) c *= s;
  return *this;
}

Element Element::operator-() const {
  Element r = *this;
  for (auto& [i, c] : r.terms_) c = -c;
  return r;
}

// ---- counting ----

int mobius(int n) {
  if (n <= 0) throw DomainError("mobius: argument must be positive");
  int result = 1;
  for (int q = 2; q * q <= n; ++q) {
    if (n % q != 0) continue;
    n /= q;
    if (n % q == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

std::uint64_t witt_dimension(int m, int k) {
  if (m < 2) throw DomainError("witt_dimension: need m >= 2");
  if (k < 1) throw DomainError("witt_dimension: need k >= 1");
  Integer sum = 0;
  for (int d = 1; d <= k; ++d) {
    if (k % d != 0) continue;
    int mu = mobius(d);
    if (mu == 0) continue;
    Integer power;
    mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(k / d));
    sum += mu * power;
  }
  sum /= k;
  if (!mpz_fits_ulong_p(sum.get_mpz_t())) throw ResourceError("witt_dimension overflows 64 bits", 0);
  return mpz_get_ui(sum.get_mpz_t());
}

std::uint64_t free_dimension(int m, int p) {
  std::uint64_t total = 0;
  for (int k = 1; k <= p; ++k) {
    std::uint64_t d = witt_dimension(m, k);
    if (total > std::numeric_limits<std::uint64_t>::max() - d)
      throw ResourceError("free_dimension overflows 64 bits", 0);
    total += d;
  }
  return total;
}

BuildLimits BuildLimits::from_environment() {
  BuildLimits limits;
  if (const char* env = std::getenv("NILSOLV_MAX_DIM"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') throw DomainError("NILSOLV_MAX_DIM must be a nonnegative integer");
    limits.max_dimension = v;
  }
  return limits;
}

// ---- FreeLieAlgebra ----

FreeLieAlgebra::FreeLieAlgebra(int m, int p) : m_(m), p_(p) {
  if (m < 2) throw DomainError("free Lie algebra needs m >= 2");
  if (p < 1) throw DomainError("free Lie algebra needs p >= 1");
  generate_trees();
  compute_structure();
}

void FreeLieAlgebra::generate_trees() {
  std::unordered_map<std::uint64_t, int> by_children;
  offsets_.assign(1, 0);
  for (int i = 1; i <= m_; ++i) {
    HallTree t;
    t.letter = i;
    t.degree = 1;
    t.content.assign(m_, 0);
    t.content[i - 1] = 1;
    trees_.push_back(std::move(t));
  }
  offsets_.push_back(m_);
  for (int k = 2; k <= p_; ++k) {
    const int existing = dimension();
    for (int a = 0; a < existing; ++a) {
      const int db = k - trees_[a].degree;
      if (db < 1) continue;
      for (int b = offsets_[db - 1]; b < offsets_[db]; ++b) {
        if (hall_rank(a) <= hall_rank(b)) continue;
        if (trees_[a].letter == 0 && hall_rank(trees_[a].right) > hall_rank(b)) continue;
        HallTree t;
        t.left = a;
        t.right = b;
        t.degree = k;
        t.content = trees_[a].content;
        for (int i = 0; i < m_; ++i) t.content[i] += trees_[b].content[i];
        trees_.push_back(std::move(t));
      }
    }
    offsets_.push_back(dimension());
  }
  classes_.resize(p_);
  for (int k = 1; k <= p_; ++k) {
    std::map<std::vector<int>, std::size_t> position;
    for (int i = degree_begin(k); i < degree_end(k); ++i) {
      auto [it, inserted] = position.try_emplace(trees_[i].content, classes_[k - 1].size());
      if (inserted) classes_[k - 1].push_back({trees_[i].content, {}});
      classes_[k - 1][it->second].indices.push_back(i);
    }
  }
}

void FreeLieAlgebra::compute_structure() {
  std::unordered_map<std::uint64_t, int> hall_pair;
  for (int i = m_; i < dimension(); ++i) hall_pair.emplace(pair_key(trees_[i].left, trees_[i].right), i);

  // Memo keyed on (a, b) with rank a > rank b.
  std::unordered_map<std::uint64_t, Element> memo;
  std::function<Element(int, int)> rewrite = [&](int a, int b) -> Element {
    if (a == b || trees_[a].degree + trees_[b].degree > p_) return zero();
    if (hall_rank(a) < hall_rank(b)) return -rewrite(b, a);
    const std::uint64_t key = pair_key(a, b);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    Element result = zero();
    const HallTree& ta = trees_[a];
    if (ta.letter != 0 || hall_rank(ta.right) <= hall_rank(b)) {
      result.add_term(hall_pair.at(key), Rational(1));
    } else {
      // [[x, y], b] = [[x, b], y] + [x, [y, b]]
      const int x = ta.left;
      const int y = ta.right;
      const Element xb = rewrite(x, b);
      for (const auto& [i, c] : xb.terms()) result += rewrite(i, y) * c;
      const Element yb = rewrite(y, b);
      for (const auto& [i, c] : yb.terms()) result += rewrite(x, i) * c;
    }
    memo.emplace(key, result);
    return result;
  };

  for (int a = 0; a < dimension(); ++a) {
    for (int b = a + 1; b < dimension(); ++b) {
      if (trees_[a].degree + trees_[b].degree > p_) break;
      Element v = rewrite(a, b);
      if (v.is_zero()) continue;
      lookup_.emplace(pair_key(a, b), structure_.size());
      structure_.push_back({a, b, std::move(v)});
    }
  }
}

Element FreeLieAlgebra::basis_element(int index) const {
  if (index < 0 || index >= dimension()) throw DomainError("basis index out of range");
  Element e = zero();
  e.add_term(index, Rational(1));
  return e;
}

Element FreeLieAlgebra::generator(int i) const {
  if (i < 1 || i > m_) throw DomainError("generator index out of range");
  return basis_element(i - 1);
}

Element FreeLieAlgebra::bracket_basis(int a, int b) const {
  if (a < 0 || b < 0 || a >= dimension() || b >= dimension()) throw DomainError("basis index out of range");
  if (a == b) return zero();
  const bool swapped = a > b;
  auto it = lookup_.find(swapped ? pair_key(b, a) : pair_key(a, b));
  if (it == lookup_.end()) return zero();
  return swapped ? -structure_[it->second].value : structure_[it->second].value;
}

Element FreeLieAlgebra::bracket(const Element& x, const Element& y) const {
  for (const Element* e : {&x, &y})
    if (!e->is_zero() && (e->generators() != m_ || e->step() != p_))
      throw DomainError("element does not belong to this algebra");
  Element result = zero();
  for (const auto& [a, ca] : x.terms())
    for (const auto& [b, cb] : y.terms()) {
      if (trees_[a].degree + trees_[b].degree > p_) continue;
      Element v = bracket_basis(a, b);
      if (!v.is_zero()) result += v * (ca * cb);
    }
  return result;
}

std::string FreeLieAlgebra::tree_string(int index) const {
  const HallTree& t = trees_.at(index);
  if (t.letter != 0) return std::to_string(t.letter);
  return "[" + tree_string(t.left) + "," + tree_string(t.right) + "]";
}

// ---- LinearOperator ----

Matrix<Rational> LinearOperator::degree_block(int k) const {
  if (k < 1 || k > p) throw DomainError("degree out of range");
  const int b = degree_offsets[k - 1];
  const int n = degree_offsets[k] - b;
  return matrix.block(b, b, n, n);
}

bool LinearOperator::preserves_degrees() const {
  for (int k = 1; k <= p; ++k)
    for (int col = degree_offsets[k - 1]; col < degree_offsets[k]; ++col)
      for (std::size_t row = 0; row < matrix.rows(); ++row) {
        const bool inside = static_cast<int>(row) >= degree_offsets[k - 1] && static_cast<int>(row) < degree_offsets[k];
        if (!inside && !nilsolv::is_zero(matrix(row, col))) return false;
      }
  return true;
}

Element LinearOperator::apply(const Element& x) const {
  if (!x.is_zero() && (x.generators() != m || x.step() != p)) throw DomainError("element does not belong to this algebra");
  Element y(m, p);
  for (const auto& [j, c] : x.terms())
    for (std::size_t i = 0; i < matrix.rows(); ++i)
      if (!nilsolv::is_zero(matrix(i, j))) y.add_term(static_cast<int>(i), matrix(i, j) * c);
  return y;
}

// ---- construction ----

FreeLieAlgebra build_algebra(int m, int p, const BuildLimits& limits) {
  if (m < 2) throw DomainError("build_algebra: need m >= 2");
  if (p < 1) throw DomainError("build_algebra: need p >= 1");
  const std::uint64_t dim = free_dimension(m, p);
  const int ceiling = m == 2 ? limits.max_step_two_generators : limits.max_step_default;
  if (p > ceiling) throw ResourceError("build_algebra: step exceeds the configured ceiling", dim);
  if (dim > limits.max_dimension) throw ResourceError("build_algebra: dimension exceeds the configured ceiling", dim);
  return FreeLieAlgebra(m, p);
}

Element normal_form(const FreeLieAlgebra& alg, const LieWord& word) {
  if (word.empty()) throw DomainError("empty word");
  for (int letter : word)
    if (letter < 1 || letter > alg.generators()) throw DomainError("generator index out of range in word");
  Element x = alg.generator(word[0]);
  for (std::size_t i = 1; i < word.size() && !x.is_zero(); ++i) x = alg.bracket(x, alg.generator(word[i]));
  return x;
}

std::vector<int> content(const LieWord& word, int m) {
  std::vector<int> c(m, 0);
  for (int letter : word) {
    if (letter < 1 || letter > m) throw DomainError("generator index out of range in word");
    ++c[letter - 1];
  }
  return c;
}

namespace {

LinearOperator empty_operator(const FreeLieAlgebra& alg) {
  LinearOperator op;
  op.m = alg.generators();
  op.p = alg.step();
  for (int k = 0; k <= alg.step(); ++k) op.degree_offsets.push_back(k == 0 ? 0 : alg.degree_end(k));
  op.matrix = Matrix<Rational>(alg.dimension(), alg.dimension());
  return op;
}

void set_column(LinearOperator& op, int col, const Element& image) {
  for (const auto& [i, c] : image.terms()) op.matrix(i, col) = c;
}

void check_generator_map(const FreeLieAlgebra& alg, const Matrix<Rational>& map) {
  const auto m = static_cast<std::size_t>(alg.generators());
  if (map.rows() != m || map.cols() != m) throw DomainError("generator map must be m x m");
}

Element generator_image(const FreeLieAlgebra& alg, const Matrix<Rational>& map, int j) {
  Element e = alg.zero();
  for (int i = 0; i < alg.generators(); ++i) e.add_term(i, map(i, j));
  return e;
}

}  // namespace

LinearOperator canonical_derivation(const FreeLieAlgebra& alg) {
  LinearOperator op = empty_operator(alg);
  for (int i = 0; i < alg.dimension(); ++i) op.matrix(i, i) = alg.degree(i);
  return op;
}

LinearOperator extend_derivation(const FreeLieAlgebra& alg, const Matrix<Rational>& generator_map) {
  check_generator_map(alg, generator_map);
  LinearOperator op = empty_operator(alg);
  std::vector<Element> images;
  images.reserve(alg.dimension());
  for (int i = 0; i < alg.dimension(); ++i) {
    const HallTree& t = alg.tree(i);
    if (t.letter != 0) {
      images.push_back(generator_image(alg, generator_map, i));
    } else {
      images.push_back(alg.bracket(images[t.left], alg.basis_element(t.right)) +
                       alg.bracket(alg.basis_element(t.left), images[t.right]));
    }
    set_column(op, i, images.back());
  }
  return op;
}

LinearOperator extend_automorphism(const FreeLieAlgebra& alg, const Matrix<Rational>& generator_map) {
  check_generator_map(alg, generator_map);
  if (is_zero(determinant(generator_map))) throw DomainError("extend_automorphism: singular generator map");
  LinearOperator op = empty_operator(alg);
  std::vector<Element> images;
  images.reserve(alg.dimension());
  for (int i = 0; i < alg.dimension(); ++i) {
    const HallTree& t = alg.tree(i);
    if (t.letter != 0) {
      images.push_back(generator_image(alg, generator_map, i));
    } else {
      images.push_back(alg.bracket(images[t.left], images[t.right]));
    }
    set_column(op, i, images.back());
  }
  return op;
}

namespace named {

Element bold_e(const FreeLieAlgebra& alg, int k) {
  if (k < 1) throw DomainError("bold_e: degree must be positive");
  if (k == 1) return alg.generator(1);
  LieWord w{1, 2};
  while (static_cast<int>(w.size()) < k) w.push_back(1);
  return normal_form(alg, w);
}

Element u(const FreeLieAlgebra& alg) { return alg.bracket(bold_e(alg, 3), bold_e(alg, 2)); }

Element z(const FreeLieAlgebra& alg) { return alg.bracket(bold_e(alg, 4), bold_e(alg, 2)); }

Element invariant_I(const FreeLieAlgebra& alg) {
  return alg.bracket(normal_form(alg, {1, 2, 1}), normal_form(alg, {1, 2, 2}));
}

Element q(const FreeLieAlgebra& alg, int i, int j, int k) {
  return normal_form(alg, {k, j, i, i}) + normal_form(alg, {i, j, k, i}) + normal_form(alg, {i, j, i, k});
}

Element r(const FreeLieAlgebra& alg, int i, int j, int k) {
  return alg.bracket(normal_form(alg, {i, j}), normal_form(alg, {i, k}));
}

Matrix<Rational> swap_generators(int m, int i, int j) {
  if (i < 1 || j < 1 || i > m || j > m) throw DomainError("generator index out of range");
  Matrix<Rational> s = Matrix<Rational>::identity(m);
  s(i - 1, i - 1) = 0;
  s(j - 1, j - 1) = 0;
  s(i - 1, j - 1) = 1;
  s(j - 1, i - 1) = 1;
  if (i == j) s(i - 1, i - 1) = 1;
  return s;
}

Matrix<Rational> elementary(int m, int row, int col) {
  if (row < 1 || col < 1 || row > m || col > m) throw DomainError("generator index out of range");
  Matrix<Rational> e(m, m);
  e(row - 1, col - 1) = 1;
  return e;
}

LinearOperator theta(const FreeLieAlgebra& alg) { return extend_derivation(alg, elementary(alg.generators(), 2, 1)); }

LinearOperator iota(const FreeLieAlgebra& alg) { return extend_automorphism(alg, swap_generators(alg.generators(), 1, 2)); }

}  // namespace named

}  // namespace nilsolv
