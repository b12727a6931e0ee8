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

#ifndef NILSOLV_METRIC_H_
#define NILSOLV_METRIC_H_

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilsolv/freelie.h"
#include "nilsolv/laurent.h"
#include "nilsolv/matrix.h"
#include "nilsolv/quadratic.h"
#include "nilsolv/rational.h"

namespace nilsolv {

// ---- admissible inner products ----

// Values of the parameter slots; an empty slot is symbolic. The generator
// block is generator_scale times the identity.
struct MetricParams {
  Rational generator_scale = 1;
  std::array<std::optional<Rational>, kSlotCount> values{};

  MetricParams& set(Slot s, const Rational& v) {
    values[static_cast<int>(s)] = v;
    return *this;
  }
  std::optional<Rational> get(Slot s) const { return values[static_cast<int>(s)]; }
};

// G^(slot) on the degree-k block, so that the degree-k Gram matrix is
// sum over slots of value(slot) * G^(slot).
struct SlotMatrix {
  Slot slot;
  Matrix<Rational> block;
};

// Seed vector whose Gram values define the slots (x^T G y for (x, y)).
struct SlotSeed {
  Slot slot;
  Element x;
  Element y;
};

// The linear family of admissible inner products on f(m, p): symmetric,
// graded, content-block-diagonal, invariant under generator permutations and
// satisfying rho_k(L^t) = rho_k(L)^* for every L.
class AdmissibleFamily {
 public:
  AdmissibleFamily() = default;
  AdmissibleFamily(int m, int p, std::vector<int> offsets, std::vector<std::vector<SlotMatrix>> per_degree,
                   std::vector<SlotSeed> seeds);

  int generators() const { return m_; }
  int step() const { return p_; }
  int dimension() const { return offsets_.back(); }
  const std::vector<int>& degree_offsets() const { return offsets_; }
  // Empty for degree 1, which carries generator_scale * identity.
  const std::vector<SlotMatrix>& degree_slots(int k) const { return per_degree_.at(k - 1); }
  const std::vector<SlotSeed>& seeds() const { return seeds_; }
  std::vector<Slot> slots() const;
  bool uses(Slot s) const;
  int degree_of(Slot s) const;

  // Full Gram matrix in the Hall basis.
  template <class F>
  Matrix<F> gram(const std::array<F, kSlotCount>& values, const F& generator_scale) const;

 private:
  int m_ = 0;
  int p_ = 0;
  std::vector<int> offsets_;
  std::vector<std::vector<SlotMatrix>> per_degree_;
  std::vector<SlotSeed> seeds_;
};

// Throws UnsupportedCase outside the covered (m, p): degrees <= 3 for all m,
// degree 4 for m = 2, 3 and degrees 5..7 for m = 2.
AdmissibleFamily admissible_family(const FreeLieAlgebra& alg);

template <class F>
struct GradedInnerProduct {
  Matrix<F> gram;
  std::vector<int> degree_offsets;

  Matrix<F> degree_block(int k) const {
    const int b = degree_offsets.at(k - 1);
    const int n = degree_offsets.at(k) - b;
    return gram.block(b, b, n, n);
  }
};

// Numeric inner product. Every slot used by the family must carry a value;
// scalar slots must be positive and V, W blocks positive definite.
GradedInnerProduct<Rational> admissible_metric(const FreeLieAlgebra& alg, const MetricParams& params);

template <class F>
GradedInnerProduct<F> admissible_metric(const AdmissibleFamily& family, const std::array<F, kSlotCount>& values,
                                        const F& generator_scale);

// ---- Ricci forms ----

// Structure constants [b_a, b_b] for a < b.
template <class F>
struct BracketTable {
  int dimension = 0;
  struct Entry {
    int a;
    int b;
    std::vector<std::pair<int, F>> value;
  };
  std::vector<Entry> entries;
};

template <class F>
BracketTable<F> bracket_table(const FreeLieAlgebra& alg);

template <class F>
struct MetricLieAlgebra {
  BracketTable<F> brackets;
  Matrix<F> gram;
  bool nilpotent = true;
};

template <class F>
struct RicciForm {
  Matrix<F> form;  // Ric(b_i, b_j)
  Matrix<F> gram;
  // Matrix of the Ricci operator ric = G^{-1} Ric.
  Matrix<F> operator_matrix() const;
};

// Inverse of a symmetric matrix through its connected nonzero blocks.
template <class F>
Matrix<F> block_inverse(const Matrix<F>& g);

template <class F>
RicciForm<F> ricci_nilpotent(const BracketTable<F>& brackets, const Matrix<F>& gram);

template <class F>
RicciForm<F> ricci_nilpotent(const FreeLieAlgebra& alg, const GradedInnerProduct<F>& g) {
  return ricci_nilpotent(bracket_table<F>(alg), g.gram);
}

// Ricci form of an arbitrary metric Lie algebra, recovered from the implicit
// trace characterization on rank-one test maps with mean curvature and
// Killing corrections.
template <class F>
RicciForm<F> ricci_general(const MetricLieAlgebra<F>& mla);

// k Tr(Phi) - Tr(Phi^2) for the canonical derivation of f(m, p).
Rational degree_constant(const FreeLieAlgebra& alg, int k);

template <class F>
struct Residual {
  Matrix<F> difference;  // Ric - target
  double max_abs = 0;
  bool is_zero() const { return difference.is_zero(); }
};

// Ric minus the nilsoliton target (k Tr Phi - Tr Phi^2) C G on each degree-k block.
template <class F>
Residual<F> nilsoliton_residual(const FreeLieAlgebra& alg, const GradedInnerProduct<F>& g, const F& C);

template <class F>
struct SolvableExtension {
  MetricLieAlgebra<F> algebra;  // basis: Hall basis of n, then H last
  F c_hat;
  F h_norm_sq;
  F einstein_constant;
  int dimension = 0;
};

// Requires a vanishing nilsoliton residual (exactly for exact F, below 1e-9
// otherwise); throws PreconditionError otherwise.
template <class F>
SolvableExtension<F> rank_one_extension(const FreeLieAlgebra& alg, const GradedInnerProduct<F>& g, const F& C);

// Tr(phi o psi) == -c Tr(psi) with phi = C Tr(Phi) Phi and c = -C Tr(Phi^2).
bool trace_identity_check(const FreeLieAlgebra& alg, const Rational& C, const LinearOperator& psi);

// ---- symbolic Ricci in an adapted frame ----

inline constexpr int kGroupScale = -1;
inline constexpr int kGroupV = 100;
inline constexpr int kGroupW = 101;

// A vector of the orthogonal frame used for symbolic work. Scalar-group
// vectors have squared norm norm_factor * slot (generator_scale for degree 1);
// block vectors come in pairs sharing a symbolic 2x2 Gram block.
struct AdaptedVector {
  Element vector;
  int degree = 0;
  std::vector<int> content;
  int group = kGroupScale;
  Rational norm_factor = 1;
  int pair_position = -1;  // 0 or 1 for block vectors
  int partner = -1;        // index of the other block vector
  std::string label;
};

struct AdaptedFrame {
  std::vector<AdaptedVector> vectors;
  Matrix<Rational> to_hall;    // columns are the vectors
  Matrix<Rational> from_hall;  // inverse of to_hall
  // Gram entries; only vectors of one block pair have off-diagonal entries.
  std::vector<std::vector<std::pair<int, Laurent>>> gram;

  Laurent gram_entry(int i, int j) const;
};

AdaptedFrame adapted_frame(const FreeLieAlgebra& alg, const AdmissibleFamily& family,
                           const Rational& generator_scale = 1);

struct BlockTrace {
  std::string label;
  int group = kGroupV;
  int first = -1;
  int second = -1;
  int degree = 0;
  Laurent trace;  // trace of Ric restricted to the pair, relative to its Gram block
};

struct SymbolicRicci {
  AdaptedFrame frame;
  // Ric(a_i, a_j) for i <= j in one content class; identically zero entries omitted.
  std::map<std::pair<int, int>, Laurent> entries;
  std::vector<BlockTrace> block_traces;

  Laurent entry(int i, int j) const;
};

// Polled between units of work; returning true abandons the computation
// with CancelledError. An empty check never stops.
using StopCheck = std::function<bool()>;

// Ric in the adapted frame with every used slot symbolic. Entries between
// different contents are verified to vanish.
SymbolicRicci symbolic_ricci(const FreeLieAlgebra& alg, const AdmissibleFamily& family,
                             const Rational& generator_scale = 1, const StopCheck& should_stop = {});

// Values array with every slot set to F(0) except those given.
template <class F>
std::array<F, kSlotCount> slot_values(const MetricParams& params) {
  std::array<F, kSlotCount> out;
  for (int i = 0; i < kSlotCount; ++i) out[i] = params.values[i] ? F(*params.values[i]) : F(0);
  return out;
}

// ---- implementation of header templates ----

template <class F>
Matrix<F> AdmissibleFamily::gram(const std::array<F, kSlotCount>& values, const F& generator_scale) const {
  Matrix<F> g(dimension(), dimension());
  for (int i = 0; i < m_; ++i) g(i, i) = generator_scale;
  for (int k = 2; k <= p_; ++k) {
    const int base = offsets_[k - 1];
    for (const SlotMatrix& sm : per_degree_[k - 1]) {
      const F& v = values[static_cast<int>(sm.slot)];
      for (std::size_t i = 0; i < sm.block.rows(); ++i)
        for (std::size_t j = 0; j < sm.block.cols(); ++j)
          if (sgn(sm.block(i, j)) != 0) g(base + i, base + j) += FieldTraits<F>::from(sm.block(i, j)) * v;
    }
  }
  return g;
}

}  // namespace nilsolv

#endif  // NILSOLV_METRIC_H_
