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

#include "nilsolv/metric.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nilsolv/errors.h"

namespace nilsolv {

namespace {

using SparseRow = std::map<int, Rational>;

// Incremental row echelon form over sparse rational rows.
class Echelon {
 public:
  explicit Echelon(int columns) : columns_(columns) {}

  void add(SparseRow row) {
    while (!row.empty()) {
      const int lead = row.begin()->first;
      auto it = pivots_.find(lead);
      if (it == pivots_.end()) {
        const Rational inv = 1 / row.begin()->second;
        for (auto& [c, v] : row) v *= inv;
        pivots_.emplace(lead, std::move(row));
        return;
      }
      const Rational f = row.begin()->second;
      for (const auto& [c, v] : it->second) {
        Rational& target = row[c];
        target -= f * v;
        if (sgn(target) == 0) row.erase(c);
      }
    }
  }

  Matrix<Rational> dense() const {
    Matrix<Rational> m(pivots_.size(), columns_);
    std::size_t r = 0;
    for (const auto& [lead, row] : pivots_) {
      for (const auto& [c, v] : row) m(r, c) = v;
      ++r;
    }
    return m;
  }

 private:
  int columns_;
  std::map<int, SparseRow> pivots_;
};

bool degree_covered(int m, int k) {
  if (k <= 3) return true;
  if (k == 4) return m <= 3;
  return m == 2 && k <= 7;
}

// Seeds per degree; the values x^T G y at the seeds define the slots.
std::vector<SlotSeed> degree_seeds(const FreeLieAlgebra& alg, int k) {
  const int m = alg.generators();
  auto e = [&](const LieWord& w) { return normal_form(alg, w); };
  auto scalar = [](Slot s, const Element& x) { return SlotSeed{s, x, x}; };
  std::vector<SlotSeed> seeds;
  switch (k) {
    case 2:
      seeds.push_back(scalar(Slot::kLambda, e({1, 2})));
      break;
    case 3:
      seeds.push_back(scalar(Slot::kXi, e({1, 2, 1})));
      break;
    case 4:
      seeds.push_back(scalar(Slot::kSigma, e({1, 2, 1, 1})));
      if (m == 3) seeds.push_back(scalar(Slot::kEta, named::r(alg, 1, 2, 3)));
      break;
    case 5:
      seeds.push_back(scalar(Slot::kAlpha, named::bold_e(alg, 5)));
      seeds.push_back(scalar(Slot::kGamma, named::u(alg)));
      break;
    case 6:
      seeds.push_back(scalar(Slot::kKappa, named::bold_e(alg, 6)));
      seeds.push_back(scalar(Slot::kDelta, named::z(alg)));
      seeds.push_back(scalar(Slot::kTheta, named::invariant_I(alg)));
      break;
    case 7: {
      seeds.push_back(scalar(Slot::kNu, named::bold_e(alg, 7)));
      const Element v1 = alg.bracket(named::bold_e(alg, 3), named::bold_e(alg, 4));
      const Element v2 = alg.bracket(named::bold_e(alg, 2), named::bold_e(alg, 5));
      const Element w1 = alg.bracket(named::u(alg), named::bold_e(alg, 2));
      const Element w2 = alg.bracket(named::invariant_I(alg), alg.generator(1));
      seeds.push_back({Slot::kV11, v1, v1});
      seeds.push_back({Slot::kV12, v1, v2});
      seeds.push_back({Slot::kV22, v2, v2});
      seeds.push_back({Slot::kW11, w1, w1});
      seeds.push_back({Slot::kW12, w1, w2});
      seeds.push_back({Slot::kW22, w2, w2});
      break;
    }
    default:
      throw UnsupportedCase("no admissible seeds for degree " + std::to_string(k));
  }
  return seeds;
}

// Local coordinates of an element in the degree-k block.
std::vector<Rational> local_coordinates(const FreeLieAlgebra& alg, int k, const Element& x) {
  std::vector<Rational> v(alg.degree_size(k));
  for (const auto& [i, c] : x.terms()) {
    if (alg.degree(i) != k) throw DomainError("element is not homogeneous of the expected degree");
    v[i - alg.degree_begin(k)] = c;
  }
  return v;
}

Rational bilinear(const Matrix<Rational>& g, const std::vector<Rational>& x, const std::vector<Rational>& y) {
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (sgn(y[j]) != 0 && sgn(g(i, j)) != 0) s += x[i] * g(i, j) * y[j];
  }
  return s;
}

}  // namespace

// ---- AdmissibleFamily ----

AdmissibleFamily::AdmissibleFamily(int m, int p, std::vector<int> offsets, std::vector<std::vector<SlotMatrix>> per_degree,
                                   std::vector<SlotSeed> seeds)
    : m_(m), p_(p), offsets_(std::move(offsets)), per_degree_(std::move(per_degree)), seeds_(std::move(seeds)) {}

std::vector<Slot> AdmissibleFamily::slots() const {
  std::vector<Slot> out;
  for (const auto& deg : per_degree_)
    for (const SlotMatrix& sm : deg) out.push_back(sm.slot);
  std::sort(out.begin(), out.end());
  return out;
}

bool AdmissibleFamily::uses(Slot s) const { return degree_of(s) > 0; }

int AdmissibleFamily::degree_of(Slot s) const {
  for (std::size_t k = 0; k < per_degree_.size(); ++k)
    for (const SlotMatrix& sm : per_degree_[k])
      if (sm.slot == s) return static_cast<int>(k) + 1;
  return 0;
}

AdmissibleFamily admissible_family(const FreeLieAlgebra& alg) {
  const int m = alg.generators();
  const int p = alg.step();
  for (int k = 2; k <= p; ++k)
    if (!degree_covered(m, k))
      throw UnsupportedCase("admissible inner products are not available for f(" + std::to_string(m) + "," +
                            std::to_string(p) + ")");

  std::vector<int> offsets{0};
  for (int k = 1; k <= p; ++k) offsets.push_back(alg.degree_end(k));

  // rho(E_ab) for a != b and R(tau) for adjacent transpositions.
  std::vector<std::pair<LinearOperator, LinearOperator>> adjoint_pairs;
  for (int a = 1; a <= m; ++a)
    for (int b = a + 1; b <= m; ++b)
      adjoint_pairs.emplace_back(extend_derivation(alg, named::elementary(m, a, b)),
                                 extend_derivation(alg, named::elementary(m, b, a)));
  std::vector<LinearOperator> perms;
  for (int i = 1; i < m; ++i) perms.push_back(extend_automorphism(alg, named::swap_generators(m, i, i + 1)));

  std::vector<std::vector<SlotMatrix>> per_degree(p);
  std::vector<SlotSeed> all_seeds;
  for (int k = 2; k <= p; ++k) {
    const int n = alg.degree_size(k);
    const int base = alg.degree_begin(k);
    // Unknowns: G(i, j), i <= j, i and j of equal content.
    std::vector<std::vector<int>> unknown(n, std::vector<int>(n, -1));
    std::vector<std::pair<int, int>> positions;
    for (const ContentClass& cls : alg.content_classes(k))
      for (std::size_t x = 0; x < cls.indices.size(); ++x)
        for (std::size_t y = x; y < cls.indices.size(); ++y) {
          const int i = cls.indices[x] - base, j = cls.indices[y] - base;
          unknown[i][j] = unknown[j][i] = static_cast<int>(positions.size());
          positions.emplace_back(i, j);
        }
    const int vars = static_cast<int>(positions.size());
    Echelon ech(vars);

    auto sparse_block = [&](const LinearOperator& op) {
      std::vector<std::vector<std::pair<int, Rational>>> cols(n);  // column j: (row, value)
      const Matrix<Rational> blk = op.degree_block(k);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (sgn(blk(i, j)) != 0) cols[j].emplace_back(i, blk(i, j));
      return cols;
    };

    // G rho(E_ba) = rho(E_ab)^T G, entrywise.
    for (const auto& [dab, dba] : adjoint_pairs) {
      for (const auto& [lhs_op, rhs_op] : {std::pair{&dba, &dab}, std::pair{&dab, &dba}}) {
        const auto right = sparse_block(*lhs_op);  // columns of D_ba
        const auto left = sparse_block(*rhs_op);   // columns of D_ab
        for (int r = 0; r < n; ++r)
          for (int c = 0; c < n; ++c) {
            SparseRow row;
            for (const auto& [t, v] : right[c])
              if (unknown[r][t] >= 0) row[unknown[r][t]] += v;
            for (const auto& [t, v] : left[r])
              if (unknown[t][c] >= 0) row[unknown[t][c]] -= v;
            for (auto it = row.begin(); it != row.end();) it = sgn(it->second) == 0 ? row.erase(it) : std::next(it);
            if (!row.empty()) ech.add(std::move(row));
          }
      }
    }
    // P^T G P = G.
    for (const LinearOperator& perm : perms) {
      const auto cols = sparse_block(perm);
      for (int r = 0; r < n; ++r)
        for (int c = r; c < n; ++c) {
          SparseRow row;
          for (const auto& [s, ps] : cols[r])
            for (const auto& [t, pt] : cols[c])
              if (unknown[s][t] >= 0) row[unknown[s][t]] += ps * pt;
          if (unknown[r][c] >= 0) row[unknown[r][c]] -= 1;
          for (auto it = row.begin(); it != row.end();) it = sgn(it->second) == 0 ? row.erase(it) : std::next(it);
          if (!row.empty()) ech.add(std::move(row));
        }
    }

    const auto basis = nullspace(ech.dense());
    const std::vector<SlotSeed> seeds = degree_seeds(alg, k);
    if (basis.size() != seeds.size())
      throw UnsupportedCase("admissible family on degree " + std::to_string(k) + " has dimension " +
                            std::to_string(basis.size()) + ", expected " + std::to_string(seeds.size()));
    auto to_matrix = [&](const std::vector<Rational>& v) {
      Matrix<Rational> g(n, n);
      for (int u = 0; u < vars; ++u) {
        auto [i, j] = positions[u];
        g(i, j) = v[u];
        g(j, i) = v[u];
      }
      return g;
    };
    const std::size_t r = seeds.size();
    Matrix<Rational> seed_values(r, r);
    std::vector<Matrix<Rational>> basis_mats;
    for (const auto& v : basis) basis_mats.push_back(to_matrix(v));
    for (std::size_t s = 0; s < r; ++s) {
      const auto x = local_coordinates(alg, k, seeds[s].x);
      const auto y = local_coordinates(alg, k, seeds[s].y);
      for (std::size_t b = 0; b < r; ++b) seed_values(s, b) = bilinear(basis_mats[b], x, y);
    }
    if (sgn(determinant(seed_values)) == 0)
      throw UnsupportedCase("seed functionals do not determine the admissible family on degree " + std::to_string(k));
    const Matrix<Rational> inv = inverse(seed_values);
    for (std::size_t s = 0; s < r; ++s) {
      Matrix<Rational> g(n, n);
      for (std::size_t b = 0; b < r; ++b)
        if (sgn(inv(b, s)) != 0) g += basis_mats[b] * inv(b, s);
      per_degree[k - 1].push_back({seeds[s].slot, std::move(g)});
    }
    all_seeds.insert(all_seeds.end(), seeds.begin(), seeds.end());
  }
  return AdmissibleFamily(m, p, std::move(offsets), std::move(per_degree), std::move(all_seeds));
}

namespace {

template <class F>
void validate_values(const AdmissibleFamily& family, const std::array<F, kSlotCount>& values, const F& scale) {
  using T = FieldTraits<F>;
  if (T::sign(scale) <= 0) throw DomainError("generator scale must be positive");
  for (Slot s : family.slots()) {
    if (is_block_slot(s)) continue;
    if (T::sign(values[static_cast<int>(s)]) <= 0)
      throw DomainError("parameter " + std::string(slot_name(s)) + " must be positive");
  }
  for (int blk = 0; blk < 2; ++blk) {
    const Slot s11 = blk == 0 ? Slot::kV11 : Slot::kW11;
    if (!family.uses(s11)) continue;
    const F& a = values[static_cast<int>(s11)];
    const F& b = values[static_cast<int>(s11) + 1];
    const F& c = values[static_cast<int>(s11) + 2];
    if (T::sign(a) <= 0 || T::sign(a * c - b * b) <= 0)
      throw DomainError(std::string(blk == 0 ? "V" : "W") + " block must be positive definite");
  }
}

}  // namespace

template <class F>
GradedInnerProduct<F> admissible_metric(const AdmissibleFamily& family, const std::array<F, kSlotCount>& values,
                                        const F& generator_scale) {
  validate_values(family, values, generator_scale);
  return {family.gram(values, generator_scale), family.degree_offsets()};
}

GradedInnerProduct<Rational> admissible_metric(const FreeLieAlgebra& alg, const MetricParams& params) {
  const AdmissibleFamily family = admissible_family(alg);
  for (Slot s : family.slots())
    if (!params.get(s)) throw DomainError("parameter " + std::string(slot_name(s)) + " has no numeric value");
  return admissible_metric(family, slot_values<Rational>(params), params.generator_scale);
}

// ---- Ricci ----

template <class F>
BracketTable<F> bracket_table(const FreeLieAlgebra& alg) {
  BracketTable<F> t;
  t.dimension = alg.dimension();
  for (const auto& e : alg.structure()) {
    typename BracketTable<F>::Entry entry{e.a, e.b, {}};
    for (const auto& [i, c] : e.value.terms()) entry.value.emplace_back(i, FieldTraits<F>::from(c));
    t.entries.push_back(std::move(entry));
  }
  return t;
}

template <class F>
Matrix<F> block_inverse(const Matrix<F>& g) {
  const std::size_t n = g.rows();
  if (g.cols() != n) throw DomainError("Gram matrix must be square");
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!FieldTraits<F>::is_zero(g(i, j)) || !FieldTraits<F>::is_zero(g(j, i))) parent[find(i)] = find(j);
  std::map<std::size_t, std::vector<std::size_t>> blocks;
  for (std::size_t i = 0; i < n; ++i) blocks[find(i)].push_back(i);
  Matrix<F> inv(n, n);
  for (const auto& [root, idx] : blocks) {
    Matrix<F> b(idx.size(), idx.size());
    for (std::size_t x = 0; x < idx.size(); ++x)
      for (std::size_t y = 0; y < idx.size(); ++y) b(x, y) = g(idx[x], idx[y]);
    const Matrix<F> bi = inverse(b);
    for (std::size_t x = 0; x < idx.size(); ++x)
      for (std::size_t y = 0; y < idx.size(); ++y) inv(idx[x], idx[y]) = bi(x, y);
  }
  return inv;
}

template <class F>
Matrix<F> RicciForm<F>::operator_matrix() const {
  return block_inverse(gram) * form;
}

namespace {

template <class F>
using SparseVec = std::vector<std::pair<int, F>>;

// Ordered-pair view of the bracket table: w[a] lists (b, [b_a, b_b]).
template <class F>
std::vector<std::vector<std::pair<int, SparseVec<F>>>> ordered_brackets(const BracketTable<F>& t) {
  std::vector<std::vector<std::pair<int, SparseVec<F>>>> w(t.dimension);
  for (const auto& e : t.entries) {
    w[e.a].emplace_back(e.b, e.value);
    SparseVec<F> neg = e.value;
    for (auto& [i, c] : neg) c = -c;
    w[e.b].emplace_back(e.a, std::move(neg));
  }
  return w;
}

template <class F>
std::vector<SparseVec<F>> sparse_rows(const Matrix<F>& m) {
  std::vector<SparseVec<F>> rows(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!FieldTraits<F>::is_zero(m(i, j))) rows[i].emplace_back(static_cast<int>(j), m(i, j));
  return rows;
}

template <class F>
std::vector<F> dense_apply(const std::vector<SparseVec<F>>& rows, const SparseVec<F>& x, std::size_t n) {
  // rows are rows of a symmetric matrix, so row i dotted with x gives entry i.
  std::vector<F> y(n, F(0));
  std::vector<F> xd(n, F(0));
  for (const auto& [i, c] : x) xd[i] += c;
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [j, g] : rows[i])
      if (!FieldTraits<F>::is_zero(xd[j])) y[i] += g * xd[j];
  return y;
}

// U_ab = sum_{c,d} g^{ac} g^{bd} [b_c, b_d], keyed by (a, b).
template <class F>
std::map<std::pair<int, int>, std::vector<F>> contracted_brackets(const BracketTable<F>& t,
                                                                  const std::vector<SparseVec<F>>& ginv_rows) {
  std::map<std::pair<int, int>, std::vector<F>> u;
  const auto w = ordered_brackets(t);
  const std::size_t n = t.dimension;
  for (int c = 0; c < t.dimension; ++c)
    for (const auto& [d, wcd] : w[c])
      for (const auto& [a, gac] : ginv_rows[c])
        for (const auto& [b, gbd] : ginv_rows[d]) {
          auto [it, inserted] = u.try_emplace({a, b}, n, F(0));
          const F f = gac * gbd;
          for (const auto& [k, v] : wcd) it->second[k] += f * v;
        }
  return u;
}

}  // namespace

template <class F>
RicciForm<F> ricci_nilpotent(const BracketTable<F>& brackets, const Matrix<F>& gram) {
  const std::size_t n = brackets.dimension;
  if (gram.rows() != n || gram.cols() != n) throw DomainError("Gram matrix does not match the algebra");
  const Matrix<F> ginv = block_inverse(gram);
  const auto ginv_rows = sparse_rows(ginv);
  const auto g_rows = sparse_rows(gram);
  const auto w = ordered_brackets(brackets);
  const auto u = contracted_brackets(brackets, ginv_rows);

  // First term: 1/4 G M G with M = sum_ab w_ab U_ab^T.
  Matrix<F> mm(n, n);
  for (int a = 0; a < static_cast<int>(n); ++a)
    for (const auto& [b, wab] : w[a]) {
      const auto& uab = u.at({a, b});
      for (const auto& [i, x] : wab)
        for (std::size_t j = 0; j < n; ++j)
          if (!FieldTraits<F>::is_zero(uab[j])) mm(i, j) += x * uab[j];
    }
  Matrix<F> form = gram * mm * gram;
  form *= FieldTraits<F>::from(Rational(1, 4));

  // Second term: -1/2 sum_{a,c} g^{ac} <[b_p, b_a], [b_q, b_c]>.
  const F half = FieldTraits<F>::from(Rational(-1, 2));
  for (int p = 0; p < static_cast<int>(n); ++p)
    for (const auto& [a, wpa] : w[p]) {
      const std::vector<F> gw = dense_apply(g_rows, wpa, n);
      for (const auto& [c, gac] : ginv_rows[a])
        for (int q = 0; q < static_cast<int>(n); ++q)
          for (const auto& [cc, wqc] : w[q]) {
            if (cc != c) continue;
            F dot(0);
            for (const auto& [k, v] : wqc) dot += gw[k] * v;
            form(p, q) += half * gac * dot;
          }
    }
  return {form, gram};
}

template <class F>
RicciForm<F> ricci_general(const MetricLieAlgebra<F>& mla) {
  const auto& t = mla.brackets;
  const std::size_t n = t.dimension;
  const Matrix<F>& g = mla.gram;
  if (g.rows() != n || g.cols() != n) throw DomainError("Gram matrix does not match the algebra");
  const Matrix<F> ginv = block_inverse(g);
  const auto ginv_rows = sparse_rows(ginv);
  const auto g_rows = sparse_rows(g);
  const auto w = ordered_brackets(t);
  const auto u = contracted_brackets(t, ginv_rows);

  auto inner = [&](const SparseVec<F>& x, const std::vector<F>& y) {
    const std::vector<F> gx = dense_apply(g_rows, x, n);
    F s(0);
    for (std::size_t i = 0; i < n; ++i)
      if (!FieldTraits<F>::is_zero(y[i])) s += gx[i] * y[i];
    return s;
  };
  auto bracket_of = [&](int a, int b) -> const SparseVec<F>* {
    for (const auto& [bb, v] : w[a])
      if (bb == b) return &v;
    return nullptr;
  };

  // Right-hand side on the test map A = E^{(q,p)} (A b_p = b_q), which
  // equals entry (p, q) of ric + S(ad_H) + B/2.
  Matrix<F> lhs(n, n);
  const F quarter = FieldTraits<F>::from(Rational(1, 4));
  for (int p = 0; p < static_cast<int>(n); ++p)
    for (int q = 0; q < static_cast<int>(n); ++q) {
      F total(0);
      for (const auto& [key, uab] : u) {
        const auto [a, b] = key;
        // A [b_a, b_b] - [A b_a, b_b] - [b_a, A b_b]
        SparseVec<F> coboundary;
        if (const SparseVec<F>* wab = bracket_of(a, b))
          for (const auto& [k, v] : *wab)
            if (k == p) coboundary.emplace_back(q, v);
        if (a == p)
          if (const SparseVec<F>* wqb = bracket_of(q, b))
            for (const auto& [k, v] : *wqb) coboundary.emplace_back(k, -v);
        if (b == p)
          if (const SparseVec<F>* waq = bracket_of(a, q))
            for (const auto& [k, v] : *waq) coboundary.emplace_back(k, -v);
        if (!coboundary.empty()) total += inner(coboundary, uab);
      }
      lhs(p, q) = quarter * total;
    }

  // ad matrices, mean curvature and Killing form.
  std::vector<Matrix<F>> ad(n, Matrix<F>(n, n));
  for (int a = 0; a < static_cast<int>(n); ++a)
    for (const auto& [b, wab] : w[a])
      for (const auto& [k, v] : wab) ad[a](k, b) = v;
  std::vector<F> h(n, F(0));
  for (std::size_t a = 0; a < n; ++a) h[a] = ad[a].trace();
  const std::vector<F> hvec = ginv.apply(h);
  Matrix<F> ad_h(n, n);
  for (std::size_t a = 0; a < n; ++a)
    if (!FieldTraits<F>::is_zero(hvec[a])) ad_h += ad[a] * hvec[a];
  Matrix<F> killing(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      const F v = (ad[a] * ad[b]).trace();
      killing(a, b) = v;
      killing(b, a) = v;
    }
  const F half = FieldTraits<F>::from(Rational(1, 2));
  Matrix<F> sym = ad_h + ginv * ad_h.transpose() * g;
  sym *= half;
  Matrix<F> ric = lhs - sym - ginv * killing * half;
  return {g * ric, g};
}

Rational degree_constant(const FreeLieAlgebra& alg, int k) {
  Rational tr = 0, tr2 = 0;
  for (int j = 1; j <= alg.step(); ++j) {
    tr += Rational(j) * alg.degree_size(j);
    tr2 += Rational(j * j) * alg.degree_size(j);
  }
  return Rational(k) * tr - tr2;
}

template <class F>
Residual<F> nilsoliton_residual(const FreeLieAlgebra& alg, const GradedInnerProduct<F>& g, const F& C) {
  const RicciForm<F> ric = ricci_nilpotent(alg, g);
  Residual<F> r{ric.form, 0.0};
  for (int k = 1; k <= alg.step(); ++k) {
    const F factor = FieldTraits<F>::from(degree_constant(alg, k)) * C;
    for (int i = alg.degree_begin(k); i < alg.degree_end(k); ++i)
      for (int j = alg.degree_begin(k); j < alg.degree_end(k); ++j)
        if (!FieldTraits<F>::is_zero(g.gram(i, j))) r.difference(i, j) -= factor * g.gram(i, j);
  }
  for (std::size_t i = 0; i < r.difference.rows(); ++i)
    for (std::size_t j = 0; j < r.difference.cols(); ++j)
      r.max_abs = std::max(r.max_abs, std::abs(FieldTraits<F>::to_double(r.difference(i, j))));
  return r;
}

template <class F>
SolvableExtension<F> rank_one_extension(const FreeLieAlgebra& alg, const GradedInnerProduct<F>& g, const F& C) {
  const Residual<F> res = nilsoliton_residual(alg, g, C);
  if constexpr (FieldTraits<F>::kExact) {
    if (!res.is_zero()) throw PreconditionError("rank_one_extension: metric is not a nilsoliton for this C");
  } else {
    if (!(res.max_abs <= 1e-9)) throw PreconditionError("rank_one_extension: metric is not a nilsoliton for this C");
  }
  Rational tr = 0, tr2 = 0;
  for (int j = 1; j <= alg.step(); ++j) {
    tr += Rational(j) * alg.degree_size(j);
    tr2 += Rational(j * j) * alg.degree_size(j);
  }
  SolvableExtension<F> ext;
  const int n = alg.dimension();
  ext.c_hat = C * FieldTraits<F>::from(tr);
  ext.h_norm_sq = ext.c_hat * FieldTraits<F>::from(tr);
  ext.einstein_constant = -(C * FieldTraits<F>::from(tr2));
  ext.dimension = n + 1;
  ext.algebra.nilpotent = false;
  ext.algebra.brackets = bracket_table<F>(alg);
  ext.algebra.brackets.dimension = n + 1;
  for (int q = 0; q < n; ++q) {
    // [b_q, H] = -c_hat deg(q) b_q
    ext.algebra.brackets.entries.push_back({q, n, {{q, -(ext.c_hat * FieldTraits<F>::from(Rational(alg.degree(q))))}}});
  }
  ext.algebra.gram = Matrix<F>(n + 1, n + 1);
  ext.algebra.gram.set_block(0, 0, g.gram);
  ext.algebra.gram(n, n) = ext.h_norm_sq;
  return ext;
}

bool trace_identity_check(const FreeLieAlgebra& alg, const Rational& C, const LinearOperator& psi) {
  const LinearOperator phi_op = canonical_derivation(alg);
  const Rational tr = phi_op.trace();
  const Rational tr2 = (phi_op.matrix * phi_op.matrix).trace();
  const Rational c_hat = C * tr;
  const Rational c = -C * tr2;
  Rational lhs = 0;
  for (int i = 0; i < alg.dimension(); ++i) lhs += c_hat * alg.degree(i) * psi.matrix(i, i);
  return lhs == -c * psi.trace();
}

#define NILSOLV_INSTANTIATE(F)                                                                                  \
  template GradedInnerProduct<F> admissible_metric(const AdmissibleFamily&, const std::array<F, kSlotCount>&,   \
                                                   const F&);                                                  \
  template BracketTable<F> bracket_table(const FreeLieAlgebra&);                                                \
  template Matrix<F> block_inverse(const Matrix<F>&);                                                           \
  template struct RicciForm<F>;                                                                                 \
  template RicciForm<F> ricci_nilpotent(const BracketTable<F>&, const Matrix<F>&);                              \
  template RicciForm<F> ricci_general(const MetricLieAlgebra<F>&);                                              \
  template Residual<F> nilsoliton_residual(const FreeLieAlgebra&, const GradedInnerProduct<F>&, const F&);      \
  template SolvableExtension<F> rank_one_extension(const FreeLieAlgebra&, const GradedInnerProduct<F>&, const F&);

NILSOLV_INSTANTIATE(Rational)
NILSOLV_INSTANTIATE(QuadraticNumber)
NILSOLV_INSTANTIATE(double)

#undef NILSOLV_INSTANTIATE

}  // namespace nilsolv
