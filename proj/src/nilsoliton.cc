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


#include "nilsolv/nilsoliton.h"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <set>
#include <stdexcept>

#include "nilsolv/errors.h"
#include "nilsolv/freelie.h"
#include "nilsolv/lp.h"
#include "nilsolv/matrix.h"
#include "nilsolv/metric.h"

namespace nilsolv {

std::string_view kind_name(EquationKind k) {
  switch (k) {
    case EquationKind::kDiagonal: return "diagonal";
    case EquationKind::kAuxiliary: return "auxiliary";
    case EquationKind::kBlockTrace: return "block-trace";
    case EquationKind::kBlockEntry: return "block-entry";
    case EquationKind::kOffDiagonal: return "off-diagonal";
  }
  return "?";
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kEinsteinNilradical: return "EinsteinNilradical";
    case Verdict::kNotEinstein: return "NotEinstein";
    case Verdict::kScreened: return "Screened";
  }
  return "?";
}

int EquationSystem::find(const std::string& label, EquationKind kind) const {
  for (std::size_t i = 0; i < equations.size(); ++i)
    if (equations[i].kind == kind && equations[i].label == label) return static_cast<int>(i);
  return -1;
}

namespace {

constexpr int kLambda = static_cast<int>(Slot::kLambda);

bool has_block_variable(const Monomial& mono) {
  for (int v = 0; v < kSlotCount; ++v)
    if (mono[v] != 0 && is_block_slot(static_cast<Slot>(v))) return true;
  return false;
}

// Integer basis of the relations among the given monomials (kernel of the
// transposed exponent matrix).
std::vector<std::vector<Integer>> monomial_relations(const std::vector<Monomial>& monos) {
  if (monos.empty()) return {};
  Matrix<Rational> e(kVariableCount, monos.size());
  for (std::size_t i = 0; i < monos.size(); ++i)
    for (int v = 0; v < kVariableCount; ++v) e(v, i) = monos[i][v];
  std::vector<std::vector<Integer>> out;
  for (const auto& k : nullspace(e)) {
    std::vector<Rational> kv(k.begin(), k.end());
    std::vector<Integer> r;
    for (const Rational& q : primitive_integer(kv)) r.push_back(q.get_num());
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

EquationSystem assemble_equations(int m, int p, const Rational& generator_scale, const StopCheck& should_stop) {
  if (sgn(generator_scale) <= 0) throw DomainError("assemble_equations: generator scale must be positive");
  const FreeLieAlgebra alg = build_algebra(m, p);
  const AdmissibleFamily family = admissible_family(alg);
  const SymbolicRicci ric = symbolic_ricci(alg, family, generator_scale, should_stop);
  const AdaptedFrame& frame = ric.frame;

  EquationSystem sys;
  sys.m = m;
  sys.p = p;
  sys.generator_scale = generator_scale;
  for (Slot s : family.slots())
    if (s != Slot::kLambda) sys.slots.push_back(s);

  auto fix = [&](const Laurent& x) { return x.substitute(kLambda, generator_scale); };
  const int n = static_cast<int>(frame.vectors.size());
  for (int i = 0; i < n; ++i) {
    const AdaptedVector& av = frame.vectors[i];
    const Rational kappa = degree_constant(alg, av.degree);
    const Laurent gii = fix(frame.gram_entry(i, i));
    if (av.group == kGroupV || av.group == kGroupW) {
      for (int j = i; j < n; ++j) {
        if (j != i && j != av.partner) continue;
        sys.equations.push_back({av.label + "[" + std::to_string(av.pair_position + 1) +
                                     std::to_string(frame.vectors[j].pair_position + 1) + "]",
                                 EquationKind::kBlockEntry, av.degree, i, j, fix(ric.entry(i, j)), kappa,
                                 fix(frame.gram_entry(i, j))});
      }
    } else {
      const bool primary = av.label.rfind("aux:", 0) != 0;
      sys.equations.push_back({av.label, primary ? EquationKind::kDiagonal : EquationKind::kAuxiliary, av.degree, i,
                               i, fix(ric.entry(i, i)) * gii.monomial_inverse(), kappa, Laurent(Rational(1))});
    }
  }
  // Orthogonal pairs: Ric must vanish there as well.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (frame.vectors[i].content == frame.vectors[j].content && frame.vectors[i].partner != j) ++sys.orthogonal_pairs;
  for (const auto& [key, value] : ric.entries) {
    const auto [i, j] = key;
    if (i == j || frame.vectors[i].partner == j) continue;
    sys.equations.push_back({frame.vectors[i].label + "|" + frame.vectors[j].label, EquationKind::kOffDiagonal,
                             frame.vectors[i].degree, i, j, fix(value), Rational(0), Laurent()});
  }
  for (const BlockTrace& bt : ric.block_traces)
    sys.equations.push_back({bt.label, EquationKind::kBlockTrace, bt.degree, bt.first, bt.second, fix(bt.trace),
                             2 * degree_constant(alg, bt.degree), Laurent(Rational(1))});

  std::set<Monomial> monos;
  for (const Equation& eq : sys.equations) {
    if (eq.kind != EquationKind::kDiagonal) continue;
    for (const auto& [mono, c] : eq.lhs.terms())
      if (!is_unit(mono)) monos.insert(mono);
  }
  sys.monomials.assign(monos.begin(), monos.end());
  sys.relations = monomial_relations(sys.monomials);
  return sys;
}

// ---- positive combinations ----

namespace {

struct SplitTerm {
  Monomial base;
  int block;  // -1 for Gram-free terms
  int entry;  // 0, 1, 2 for the (1,1), (1,2), (2,2) Gram entry
};

SplitTerm split_term(const Monomial& mono) {
  SplitTerm out{mono, -1, -1};
  for (int v = 0; v < kSlotCount; ++v) {
    const Slot s = static_cast<Slot>(v);
    if (mono[v] == 0 || !is_block_slot(s)) continue;
    if (out.block >= 0 || mono[v] != 1)
      throw std::logic_error("positive combination: term is not linear in one Gram block");
    out.block = block_of(s);
    out.entry = v - static_cast<int>(block_of(s) == 0 ? Slot::kV11 : Slot::kW11);
    out.base[v] = 0;
  }
  return out;
}

using BlockKey = std::pair<Monomial, int>;
using Sym2 = std::array<Rational, 3>;  // (q11, q12, q22)

// Gram-free coefficients and 2x2 coefficient matrices of a Laurent polynomial.
void collect(const Laurent& x, std::map<Monomial, Rational>* scalar, std::map<BlockKey, Sym2>* blocks) {
  for (const auto& [mono, c] : x.terms()) {
    const SplitTerm t = split_term(mono);
    if (t.block < 0) {
      (*scalar)[t.base] += c;
    } else {
      Sym2& q = (*blocks)[{t.base, t.block}];
      // The off-diagonal Gram entry appears twice in the pairing.
      q[t.entry] += t.entry == 1 ? c / 2 : c;
    }
  }
}

}  // namespace

Combination combine(const EquationSystem& sys, const std::vector<std::pair<int, Rational>>& weights) {
  Combination out;
  out.weights = weights;
  for (const auto& [idx, w] : weights) {
    const Equation& eq = sys.equations.at(idx);
    if (!(eq.gram == Laurent(Rational(1))))
      throw DomainError("combine: only normalized equations can be combined");
    out.labels.push_back(eq.label);
    out.lhs += eq.lhs * w;
    out.rhs += eq.rhs_constant * w;
  }
  return out;
}

bool is_contradiction(const Combination& c) {
  for (const auto& [idx, w] : c.weights)
    if (sgn(w) < 0) return false;
  if (sgn(c.rhs) >= 0) return false;
  std::map<Monomial, Rational> scalar;
  std::map<BlockKey, Sym2> blocks;
  try {
    collect(c.lhs, &scalar, &blocks);
  } catch (const std::logic_error&) {
    return false;
  }
  bool positive = false;
  for (const auto& [mono, q] : scalar) {
    if (sgn(q) < 0) return false;
    positive = positive || sgn(q) > 0;
  }
  for (const auto& [key, q] : blocks) {
    if (sgn(q[0]) < 0 || sgn(q[2]) < 0 || sgn(q[0] * q[2] - q[1] * q[1]) < 0) return false;
    positive = positive || sgn(q[0]) > 0 || sgn(q[2]) > 0;
  }
  return positive;
}

namespace {

// LP for a nonnegative combination of the given equations: Gram-free
// coefficients >= 0, block coefficient matrices in the cone generated by
// d d^T over a finite direction set, and right side -1.
std::optional<Combination> search_combination(const EquationSystem& sys, const std::vector<int>& eqs) {
  std::vector<std::map<Monomial, Rational>> scalar(eqs.size());
  std::vector<std::map<BlockKey, Sym2>> blocks(eqs.size());
  std::set<Monomial> scalar_keys;
  std::map<BlockKey, std::set<std::pair<Rational, Rational>>> directions;
  for (std::size_t e = 0; e < eqs.size(); ++e) {
    collect(sys.equations[eqs[e]].lhs, &scalar[e], &blocks[e]);
    for (const auto& [mono, q] : scalar[e]) scalar_keys.insert(mono);
    for (const auto& [key, q] : blocks[e]) {
      auto& dirs = directions[key];
      dirs.insert({1, 0});
      dirs.insert({0, 1});
      dirs.insert({1, 1});
      dirs.insert({1, -1});
      // A rank-one coefficient matrix contributes its own direction.
      if (sgn(q[0] * q[2] - q[1] * q[1]) == 0) {
        if (sgn(q[0]) != 0)
          dirs.insert({1, q[1] / q[0]});
      }
    }
  }

  const int n_eq = static_cast<int>(eqs.size());
  int n_var = n_eq + static_cast<int>(scalar_keys.size());
  for (const auto& [key, dirs] : directions) n_var += static_cast<int>(dirs.size());
  const int n_row = static_cast<int>(scalar_keys.size()) + 3 * static_cast<int>(directions.size()) + 1;

  Matrix<Rational> a(n_row, n_var);
  std::vector<Rational> b(n_row, Rational(0));
  int row = 0;
  int col = n_eq;
  for (const Monomial& mono : scalar_keys) {
    for (int e = 0; e < n_eq; ++e) {
      auto it = scalar[e].find(mono);
      if (it != scalar[e].end()) a(row, e) = it->second;
    }
    a(row, col++) = -1;
    ++row;
  }
  for (const auto& [key, dirs] : directions) {
    for (int entry = 0; entry < 3; ++entry) {
      for (int e = 0; e < n_eq; ++e) {
        auto it = blocks[e].find(key);
        if (it != blocks[e].end()) a(row + entry, e) = it->second[entry];
      }
    }
    int c = col;
    for (const auto& [d1, d2] : dirs) {
      a(row, c) = -d1 * d1;
      a(row + 1, c) = -d1 * d2;
      a(row + 2, c) = -d2 * d2;
      ++c;
    }
    col = c;
    row += 3;
  }
  for (int e = 0; e < n_eq; ++e) a(row, e) = sys.equations[eqs[e]].rhs_constant;
  b[row] = -1;

  const FeasibilityResult lp = solve_feasibility(a, b);
  if (!lp.feasible) return std::nullopt;
  std::vector<Rational> w(lp.x.begin(), lp.x.begin() + n_eq);
  w = primitive_integer(w);
  std::vector<std::pair<int, Rational>> weights;
  for (int e = 0; e < n_eq; ++e)
    if (sgn(w[e]) != 0) weights.emplace_back(eqs[e], w[e]);
  Combination c = combine(sys, weights);
  if (!is_contradiction(c)) return std::nullopt;
  return c;
}

// ---- exact elimination ----

struct Affine {
  Rational a;  // value = a + b t
  Rational b;
};

Polynomial as_polynomial(const Affine& x) { return Polynomial({x.a, x.b}); }

Polynomial power(const Polynomial& p, int e) {
  Polynomial out = Polynomial::constant(1);
  for (int i = 0; i < e; ++i) out *= p;
  return out;
}

QuadraticNumber power(const QuadraticNumber& x, int e) {
  QuadraticNumber out(1);
  const QuadraticNumber base = e < 0 ? QuadraticNumber(1) / x : x;
  for (int i = 0; i < std::abs(e); ++i) out *= base;
  return out;
}

// Slot values from monomial values: for each slot an integer combination of
// monomial exponent rows equal to that slot's unit vector.
std::optional<std::vector<std::pair<Slot, std::vector<Integer>>>> slot_recovery(const std::vector<Monomial>& monos,
                                                                              const std::vector<Slot>& slots) {
  const std::size_t r = monos.size();
  std::vector<std::pair<Slot, std::vector<Integer>>> out;
  for (Slot s : slots) {
    // Solve E^T c = e_s over Q.
    Matrix<Rational> aug(kVariableCount, r + 1);
    for (std::size_t i = 0; i < r; ++i)
      for (int v = 0; v < kVariableCount; ++v) aug(v, i) = monos[i][v];
    aug(static_cast<int>(s), r) = 1;
    Matrix<Rational> red = aug;
    rref(red);
    std::vector<Rational> c(r, Rational(0));
    bool ok = true;
    for (std::size_t row = 0; row < red.rows(); ++row) {
      std::size_t lead = r + 1;
      for (std::size_t j = 0; j <= r; ++j)
        if (sgn(red(row, j)) != 0) {
          lead = j;
          break;
        }
      if (lead == r) ok = false;
      if (lead < r) c[lead] = red(row, r);
    }
    if (!ok) return std::nullopt;
    std::vector<Integer> ci;
    for (const Rational& q : c) {
      if (q.get_den() != 1) return std::nullopt;
      ci.push_back(q.get_num());
    }
    out.emplace_back(s, std::move(ci));
  }
  return out;
}

// Exact residual check of a candidate solution; fills the solution on success.
bool confirm(const EquationSystem& sys, const std::array<std::optional<QuadraticNumber>, kSlotCount>& slots,
             const QuadraticNumber& C, EinsteinSolution* out) {
  const FreeLieAlgebra alg = build_algebra(sys.m, sys.p);
  const AdmissibleFamily family = admissible_family(alg);
  std::array<QuadraticNumber, kSlotCount> values;
  for (int i = 0; i < kSlotCount; ++i) values[i] = slots[i].value_or(QuadraticNumber(0));
  values[kLambda] = QuadraticNumber(sys.generator_scale);
  for (Slot s : sys.slots)
    if (!slots[static_cast<int>(s)] || slots[static_cast<int>(s)]->sign() <= 0) return false;
  if (C.sign() <= 0 && sys.p > 1) return false;
  const auto g = admissible_metric(family, values, QuadraticNumber(sys.generator_scale));
  if (!nilsoliton_residual(alg, g, C).is_zero()) return false;

  std::array<double, kSlotCount> fvalues;
  for (int i = 0; i < kSlotCount; ++i) fvalues[i] = values[i].to_double();
  const auto gf = admissible_metric(family, fvalues, sys.generator_scale.get_d());
  out->float_residual = nilsoliton_residual(alg, gf, C.to_double()).max_abs;

  out->slots = slots;
  out->slots[kLambda] = QuadraticNumber(sys.generator_scale);
  out->C = C;
  out->radicand = C.radicand();
  for (const auto& v : slots)
    if (v && !v->is_rational()) out->radicand = v->radicand();
  out->c_minimal_polynomial = minimal_polynomial(C);
  out->exact_residual_zero = true;
  return true;
}

struct EliminationResult {
  std::optional<EinsteinSolution> solution;
  std::optional<UnivariateCertificate> certificate;
};

EliminationResult eliminate(const EquationSystem& sys) {
  EliminationResult none;
  std::vector<int> eqs;
  for (std::size_t i = 0; i < sys.equations.size(); ++i)
    if (sys.equations[i].kind == EquationKind::kDiagonal) eqs.push_back(static_cast<int>(i));
  for (const Monomial& mono : sys.monomials)
    if (has_block_variable(mono)) return none;

  // Unknown columns: monomials other than xi^2, then C, then xi^2, so that
  // xi^2 is the free variable whenever it can be.
  const Monomial xi2 = variable_monomial(static_cast<int>(Slot::kXi));
  std::vector<Monomial> cols;
  for (const Monomial& mono : sys.monomials)
    if (mono != xi2) cols.push_back(mono);
  const int c_col = static_cast<int>(cols.size());
  cols.push_back(variable_monomial(kVariableC));
  if (std::find(sys.monomials.begin(), sys.monomials.end(), xi2) != sys.monomials.end()) cols.push_back(xi2);
  const int n = static_cast<int>(cols.size());

  Matrix<Rational> aug(eqs.size(), n + 1);
  for (std::size_t r = 0; r < eqs.size(); ++r) {
    const Equation& eq = sys.equations[eqs[r]];
    for (const auto& [mono, c] : eq.lhs.terms()) {
      if (is_unit(mono)) {
        aug(r, n) -= c;
        continue;
      }
      const int j = static_cast<int>(std::find(cols.begin(), cols.end(), mono) - cols.begin());
      aug(r, j) += c;
    }
    aug(r, c_col) -= eq.rhs_constant;
  }
  rref(aug);

  std::vector<int> pivot_col(aug.rows(), -1);
  std::vector<bool> is_pivot(n, false);
  for (std::size_t r = 0; r < aug.rows(); ++r) {
    for (int j = 0; j <= n; ++j)
      if (sgn(aug(r, j)) != 0) {
        if (j == n) return none;  // inconsistent; left to the combination search
        pivot_col[r] = j;
        is_pivot[j] = true;
        break;
      }
  }
  std::vector<int> free_cols;
  for (int j = 0; j < n; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  if (free_cols.size() > 1) return none;

  std::vector<Affine> value(n, Affine{Rational(0), Rational(0)});
  const int t_col = free_cols.empty() ? -1 : free_cols[0];
  if (t_col >= 0) value[t_col] = {Rational(0), Rational(1)};
  for (std::size_t r = 0; r < aug.rows(); ++r) {
    if (pivot_col[r] < 0) continue;
    value[pivot_col[r]].a = aug(r, n);
    if (t_col >= 0) value[pivot_col[r]].b = -aug(r, t_col);
  }
  auto monomial_value = [&](const Monomial& mono) {
    return value[std::find(cols.begin(), cols.end(), mono) - cols.begin()];
  };

  // Side relations become polynomials in t; t > 0 so powers of t are dropped.
  std::vector<std::pair<Polynomial, std::vector<Integer>>> side;
  for (const auto& rel : sys.relations) {
    Polynomial lhs = Polynomial::constant(1);
    Polynomial rhs = Polynomial::constant(1);
    for (std::size_t i = 0; i < rel.size(); ++i) {
      const int e = static_cast<int>(rel[i].get_si());
      if (e > 0) lhs *= power(as_polynomial(monomial_value(sys.monomials[i])), e);
      if (e < 0) rhs *= power(as_polynomial(monomial_value(sys.monomials[i])), -e);
    }
    Polynomial diff = lhs - rhs;
    if (!diff.is_zero()) diff = diff.strip_zero_roots().primitive();
    side.emplace_back(diff, rel);
  }

  const std::string t_name = t_col < 0 ? "" : to_string(cols[t_col]);
  for (const auto& [poly, rel] : side) {
    if (!poly.is_zero() && poly.one_signed()) {
      EliminationResult out;
      out.certificate = UnivariateCertificate{t_col < 0 ? "1" : t_name, poly, rel};
      return out;
    }
  }

  std::vector<QuadraticNumber> candidates;
  if (t_col < 0) {
    candidates.emplace_back(0);
  } else {
    Polynomial g;
    for (const auto& [poly, rel] : side)
      if (!poly.is_zero()) g = g.is_zero() ? poly : gcd(g, poly);
    if (g.is_zero() || g.degree() < 1) return none;
    candidates = exact_positive_roots(g);
  }

  const auto recovery = slot_recovery(sys.monomials, sys.slots);
  if (!recovery) return none;
  for (const QuadraticNumber& t : candidates) {
    auto at = [&](const Affine& x) { return QuadraticNumber(x.a) + QuadraticNumber(x.b) * t; };
    std::vector<QuadraticNumber> mvals;
    bool positive = true;
    for (const Monomial& mono : sys.monomials) {
      mvals.push_back(at(monomial_value(mono)));
      positive = positive && mvals.back().sign() > 0;
    }
    if (!positive) continue;
    std::array<std::optional<QuadraticNumber>, kSlotCount> slots{};
    for (const auto& [s, coeffs] : *recovery) {
      QuadraticNumber v(1);
      for (std::size_t i = 0; i < coeffs.size(); ++i) v *= power(mvals[i], static_cast<int>(coeffs[i].get_si()));
      slots[static_cast<int>(s)] = v;
    }
    EinsteinSolution sol;
    if (confirm(sys, slots, at(value[c_col]), &sol)) {
      EliminationResult out;
      out.solution = sol;
      return out;
    }
  }
  return none;
}

}  // namespace

ExtensionData extension_data(int m, int p, const EinsteinSolution& solution, const Rational& generator_scale) {
  const FreeLieAlgebra alg = build_algebra(m, p);
  ExtensionData out;
  if (p == 1) {
    // Abelian: H acts as the identity; c_hat = C Tr Phi, |H|^2 = c_hat Tr Phi.
    const QuadraticNumber tr(m);
    out.c_hat = solution.C * tr;
    out.h_norm_sq = out.c_hat * tr;
    out.einstein_constant = -solution.C * tr;
    out.dimension = m + 1;
    return out;
  }
  const AdmissibleFamily family = admissible_family(alg);
  std::array<QuadraticNumber, kSlotCount> values;
  for (int i = 0; i < kSlotCount; ++i) values[i] = solution.slots[i].value_or(QuadraticNumber(0));
  const auto g = admissible_metric(family, values, QuadraticNumber(generator_scale));
  const auto ext = rank_one_extension(alg, g, solution.C);
  out.c_hat = ext.c_hat;
  out.h_norm_sq = ext.h_norm_sq;
  out.einstein_constant = ext.einstein_constant;
  out.dimension = ext.dimension;
  return out;
}

ClassificationOutcome solve_equations(const EquationSystem& sys) {
  ClassificationOutcome out;
  out.m = sys.m;
  out.p = sys.p;

  const EliminationResult elim = eliminate(sys);
  if (elim.solution) {
    out.verdict = Verdict::kEinsteinNilradical;
    out.solution = elim.solution;
    out.extension = extension_data(sys.m, sys.p, *elim.solution, sys.generator_scale);
    return out;
  }
  if (elim.certificate) {
    out.verdict = Verdict::kNotEinstein;
    out.univariate = elim.certificate;
    return out;
  }

  std::vector<int> diagonal;
  std::vector<int> with_traces;
  for (std::size_t i = 0; i < sys.equations.size(); ++i) {
    const EquationKind k = sys.equations[i].kind;
    if (k == EquationKind::kDiagonal) diagonal.push_back(static_cast<int>(i));
    if (k == EquationKind::kDiagonal || k == EquationKind::kBlockTrace) with_traces.push_back(static_cast<int>(i));
  }
  auto found = search_combination(sys, diagonal);
  if (!found && with_traces.size() > diagonal.size()) found = search_combination(sys, with_traces);
  if (found) {
    out.verdict = Verdict::kNotEinstein;
    out.combination = found;
    return out;
  }
  throw UndecidedError("solve_equations: no solution or certificate found for f(" + std::to_string(sys.m) + ", " +
                       std::to_string(sys.p) + ")");
}

ClassificationOutcome solve_free(int m, int p, const Rational& generator_scale) {
  if (m < 2 || p < 1) throw DomainError("solve_free: need m >= 2 and p >= 1");
  if (p == 1) {
    // Ric vanishes and every C balances 0 = 0; C = 1 / Tr Phi makes the
    // Einstein derivation the identity.
    ClassificationOutcome out;
    out.m = m;
    out.p = 1;
    out.verdict = Verdict::kEinsteinNilradical;
    EinsteinSolution sol;
    sol.C = QuadraticNumber(Rational(1, m) / generator_scale);
    sol.c_minimal_polynomial = minimal_polynomial(sol.C);
    const FreeLieAlgebra alg = build_algebra(m, 1);
    GradedInnerProduct<Rational> g;
    g.gram = Matrix<Rational>::identity(m) * generator_scale;
    g.degree_offsets = {0, m};
    sol.exact_residual_zero = nilsoliton_residual(alg, g, sol.C.rational_part()).is_zero();
    sol.slots[kLambda] = QuadraticNumber(generator_scale);
    out.solution = sol;
    out.extension = extension_data(m, 1, sol, generator_scale);
    return out;
  }
  return solve_equations(assemble_equations(m, p, generator_scale));
}

namespace {

// Recomputes the nilsoliton residual of a stored solution exactly.
bool residual_vanishes(int m, int p, const EinsteinSolution& s) {
  const FreeLieAlgebra alg = build_algebra(m, p);
  const QuadraticNumber scale = s.slots[kLambda].value_or(QuadraticNumber(1));
  if (scale.sign() <= 0 || (p > 1 && s.C.sign() <= 0)) return false;
  GradedInnerProduct<QuadraticNumber> g;
  if (p == 1) {
    g.gram = Matrix<QuadraticNumber>::identity(m) * scale;
    g.degree_offsets = {0, m};
  } else {
    const AdmissibleFamily family = admissible_family(alg);
    std::array<QuadraticNumber, kSlotCount> values;
    for (int i = 0; i < kSlotCount; ++i) values[i] = s.slots[i].value_or(QuadraticNumber(0));
    for (Slot slot : family.slots())
      if (!s.slots[static_cast<int>(slot)] || s.slots[static_cast<int>(slot)]->sign() <= 0) return false;
    g = admissible_metric(family, values, scale);
  }
  return nilsoliton_residual(alg, g, s.C).is_zero();
}

}  // namespace

bool verify_outcome(const ClassificationOutcome& o) {
  switch (o.verdict) {
    case Verdict::kEinsteinNilradical:
      return o.solution && residual_vanishes(o.m, o.p, *o.solution);
    case Verdict::kScreened:
      return o.cone && !o.cone->feasible && verify_certificate(canonical_type(o.m, o.p), *o.cone);
    case Verdict::kNotEinstein:
      if (o.univariate) return !o.univariate->polynomial.is_zero() && o.univariate->polynomial.one_signed();
      if (o.combination) return is_contradiction(*o.combination);
      return false;
  }
  return false;
}

bool expected_einstein_nilradical(int m, int p) {
  if (p <= 2) return true;
  if (p == 3) return m <= 5;
  return m == 2 && (p == 4 || p == 5);
}

Rational three_step_parameter(int m) {
  const int den = -m * m + 4 * m + 8;
  if (den <= 0) throw DomainError("three_step_parameter: needs m <= 5");
  Rational t(m + 1, den);
  t.canonicalize();
  return t;
}

bool report_matches_classification(const ClassificationReport& r) {
  if (!r.gaps.empty()) return false;
  for (const auto& c : r.cases) {
    if (!verify_outcome(c)) return false;
    if ((c.verdict == Verdict::kEinsteinNilradical) != expected_einstein_nilradical(c.m, c.p)) return false;
  }
  return true;
}

ClassificationReport classify(int max_m, int max_p) {
  if (max_m < 2 || max_p < 1) throw DomainError("classify: need max_m >= 2 and max_p >= 1");
  struct Job {
    std::optional<ClassificationOutcome> outcome;
    std::optional<ClassificationReport::Gap> gap;
  };
  auto run = [](int m, int p) {
    Job job;
    try {
      if (p >= 3) {
        const ScreenResult s = screen_free(m, p);
        if (!s.survivor) {
          ClassificationOutcome o;
          o.m = m;
          o.p = p;
          o.verdict = Verdict::kScreened;
          o.cone = s.certificate;
          job.outcome = o;
          return job;
        }
      }
      job.outcome = solve_free(m, p);
    } catch (const UnsupportedCase& e) {
      job.gap = ClassificationReport::Gap{m, p, e.what()};
    } catch (const ResourceError& e) {
      job.gap = ClassificationReport::Gap{m, p, e.what()};
    }
    return job;
  };
  std::vector<std::future<Job>> jobs;
  for (int m = 2; m <= max_m; ++m)
    for (int p = 1; p <= max_p; ++p) jobs.push_back(std::async(std::launch::async, run, m, p));
  ClassificationReport report;
  for (auto& f : jobs) {
    Job j = f.get();
    if (j.outcome) report.cases.push_back(std::move(*j.outcome));
    if (j.gap) report.gaps.push_back(*j.gap);
  }
  return report;
}

}  // namespace nilsolv
