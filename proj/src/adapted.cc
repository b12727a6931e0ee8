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

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "nilsolv/errors.h"
#include "nilsolv/metric.h"

namespace nilsolv {

namespace {

int group_of(Slot s) {
  switch (block_of(s)) {
    case 0:
      return kGroupV;
    case 1:
      return kGroupW;
    default:
      return static_cast<int>(s);
  }
}

std::string group_name(int group) {
  if (group == kGroupScale) return "scale";
  if (group == kGroupV) return "V";
  if (group == kGroupW) return "W";
  return std::string(slot_name(static_cast<Slot>(group)));
}

std::string primary_label(Slot s) {
  switch (s) {
    case Slot::kLambda:
      return "e12";
    case Slot::kXi:
      return "e121";
    case Slot::kSigma:
      return "e1211";
    case Slot::kEta:
      return "r123";
    case Slot::kAlpha:
      return "e12111";
    case Slot::kGamma:
      return "u";
    case Slot::kKappa:
      return "e121111";
    case Slot::kDelta:
      return "z";
    case Slot::kTheta:
      return "I";
    case Slot::kNu:
      return "e1211111";
    default:
      return std::string(slot_name(s));
  }
}

std::string content_string(const std::vector<int>& c) {
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "." : "") + std::to_string(c[i]);
  return s;
}

using Vec = std::vector<Rational>;

Vec coords(const FreeLieAlgebra& alg, const Element& x) {
  Vec v(alg.dimension());
  for (const auto& [i, c] : x.terms()) v[i] = c;
  return v;
}

Element from_coords(const FreeLieAlgebra& alg, const Vec& v) {
  Element e = alg.zero();
  for (std::size_t i = 0; i < v.size(); ++i) e.add_term(static_cast<int>(i), v[i]);
  return e;
}

// x^T G y with G given on the degree-k block.
Rational form(const Matrix<Rational>& g, int base, const Vec& x, const Vec& y) {
  Rational s = 0;
  const int n = static_cast<int>(g.rows());
  for (int i = 0; i < n; ++i) {
    if (sgn(x[base + i]) == 0) continue;
    for (int j = 0; j < n; ++j)
      if (sgn(y[base + j]) != 0 && sgn(g(i, j)) != 0) s += x[base + i] * g(i, j) * y[base + j];
  }
  return s;
}

bool is_zero_vec(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& c) { return sgn(c) == 0; });
}

// Rank of a set of vectors.
std::size_t span_rank(const std::vector<Vec>& vs) {
  if (vs.empty()) return 0;
  Matrix<Rational> m(vs.size(), vs[0].size());
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < vs[i].size(); ++j) m(i, j) = vs[i][j];
  return rank(m);
}

struct DegreeContext {
  const FreeLieAlgebra& alg;
  const std::vector<SlotMatrix>& slots;
  int k;
  int base;

  // G^(t) x = 0 for all slots t outside the group, and x supported on the class.
  bool in_group_space(const Vec& x, int group, const ContentClass& cls) const {
    for (int i = 0; i < alg.dimension(); ++i)
      if (sgn(x[i]) != 0 && std::find(cls.indices.begin(), cls.indices.end(), i) == cls.indices.end()) return false;
    for (const SlotMatrix& sm : slots) {
      if (group_of(sm.slot) == group) continue;
      const int n = static_cast<int>(sm.block.rows());
      for (int r = 0; r < n; ++r) {
        Rational s = 0;
        for (int c = 0; c < n; ++c) s += sm.block(r, c) * x[base + c];
        if (sgn(s) != 0) return false;
      }
    }
    return true;
  }

  // Basis of the group space within one content class.
  std::vector<Vec> group_space(int group, const ContentClass& cls) const {
    const int n = static_cast<int>(cls.indices.size());
    std::vector<const SlotMatrix*> others;
    for (const SlotMatrix& sm : slots)
      if (group_of(sm.slot) != group) others.push_back(&sm);
    Matrix<Rational> stacked(std::max<std::size_t>(1, others.size()) * n, n);
    for (std::size_t t = 0; t < others.size(); ++t)
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
          stacked(t * n + r, c) = others[t]->block(cls.indices[r] - base, cls.indices[c] - base);
    std::vector<Vec> out;
    for (const auto& v : nullspace(stacked)) {
      Vec full(alg.dimension());
      for (int c = 0; c < n; ++c) full[cls.indices[c]] = v[c];
      out.push_back(std::move(full));
    }
    return out;
  }
};

}  // namespace

Laurent AdaptedFrame::gram_entry(int i, int j) const {
  for (const auto& [col, v] : gram.at(i))
    if (col == j) return v;
  return Laurent();
}

Laurent SymbolicRicci::entry(int i, int j) const {
  auto it = entries.find({std::min(i, j), std::max(i, j)});
  return it == entries.end() ? Laurent() : it->second;
}

AdaptedFrame adapted_frame(const FreeLieAlgebra& alg, const AdmissibleFamily& family, const Rational& generator_scale) {
  const int m = alg.generators();
  const int n = alg.dimension();
  AdaptedFrame frame;

  const LinearOperator theta = named::theta(alg);
  const LinearOperator iota = named::iota(alg);
  // Orbit of an element under powers of theta and the swap.
  auto orbit = [&](const Element& x) {
    std::vector<Element> out;
    Element cur = x;
    std::vector<Element> powers;
    while (!cur.is_zero()) {
      powers.push_back(cur);
      cur = theta.apply(cur);
    }
    for (const Element& e : powers) out.push_back(e);
    for (const Element& e : powers) out.push_back(iota.apply(e));
    return out;
  };

  for (int i = 0; i < m; ++i) {
    AdaptedVector av;
    av.vector = alg.basis_element(i);
    av.degree = 1;
    av.content = alg.content(i);
    av.group = kGroupScale;
    av.label = i == 0 ? "e1" : "aux:scale:" + content_string(av.content) + ":0";
    frame.vectors.push_back(std::move(av));
  }

  for (int k = 2; k <= alg.step(); ++k) {
    const auto& slots = family.degree_slots(k);
    DegreeContext ctx{alg, slots, k, alg.degree_begin(k)};
    std::vector<int> groups;
    for (const SlotMatrix& sm : slots)
      if (std::find(groups.begin(), groups.end(), group_of(sm.slot)) == groups.end()) groups.push_back(group_of(sm.slot));
    auto slot_matrix = [&](Slot s) -> const Matrix<Rational>& {
      for (const SlotMatrix& sm : slots)
        if (sm.slot == s) return sm.block;
      throw std::logic_error("slot not present in degree");
    };
    auto seeds_for = [&](int group) {
      std::vector<SlotSeed> out;
      for (const SlotSeed& sd : family.seeds())
        if (group_of(sd.slot) == group) out.push_back(sd);
      return out;
    };

    for (const ContentClass& cls : alg.content_classes(k)) {
      std::size_t found = 0;
      for (int group : groups) {
        const std::vector<Vec> space = ctx.group_space(group, cls);
        if (space.empty()) continue;
        const std::vector<SlotSeed> seeds = seeds_for(group);
        if (group == kGroupV || group == kGroupW) {
          if (space.size() != 2) throw UnsupportedCase("block group space of unexpected dimension");
          const Element& v1 = seeds[0].x;
          const Element& v2 = seeds[2].x;
          const auto o1 = orbit(v1), o2 = orbit(v2);
          bool done = false;
          for (std::size_t t = 0; t < std::min(o1.size(), o2.size()) && !done; ++t) {
            const Vec x = coords(alg, o1[t]), y = coords(alg, o2[t]);
            if (is_zero_vec(x) || is_zero_vec(y)) continue;
            if (!ctx.in_group_space(x, group, cls) || !ctx.in_group_space(y, group, cls)) continue;
            if (span_rank({x, y}) != 2) continue;
            const int first = static_cast<int>(frame.vectors.size());
            const bool primary = t == 0;
            for (int pos = 0; pos < 2; ++pos) {
              AdaptedVector av;
              av.vector = pos == 0 ? o1[t] : o2[t];
              av.degree = k;
              av.content = cls.content;
              av.group = group;
              av.pair_position = pos;
              av.partner = pos == 0 ? first + 1 : first;
              av.label = primary ? group_name(group) : "aux:" + group_name(group) + ":" + content_string(cls.content) + ":" + std::to_string(t);
              frame.vectors.push_back(std::move(av));
            }
            done = true;
          }
          if (!done) throw UnsupportedCase("no image pair spans the block group space");
          found += 2;
          continue;
        }
        const Slot s = static_cast<Slot>(group);
        const Matrix<Rational>& gs = slot_matrix(s);
        std::vector<Vec> candidates;
        for (const Element& e : orbit(seeds.at(0).x)) candidates.push_back(coords(alg, e));
        candidates.insert(candidates.end(), space.begin(), space.end());
        std::vector<Vec> chosen;
        std::vector<Rational> norms;
        for (const Vec& cand : candidates) {
          if (chosen.size() == space.size()) break;
          if (is_zero_vec(cand) || !ctx.in_group_space(cand, group, cls)) continue;
          Vec w = cand;
          for (std::size_t a = 0; a < chosen.size(); ++a) {
            const Rational f = form(gs, ctx.base, w, chosen[a]) / norms[a];
            for (int i = 0; i < n; ++i) w[i] -= f * chosen[a][i];
          }
          if (is_zero_vec(w)) continue;
          const Rational nrm = form(gs, ctx.base, w, w);
          if (sgn(nrm) <= 0) throw UnsupportedCase("slot form is not positive on its group space");
          chosen.push_back(w);
          norms.push_back(nrm);
        }
        if (chosen.size() != space.size()) throw UnsupportedCase("could not complete an orthogonal frame");
        const Vec seed_coords = coords(alg, seeds.at(0).x);
        for (std::size_t a = 0; a < chosen.size(); ++a) {
          AdaptedVector av;
          av.vector = from_coords(alg, chosen[a]);
          av.degree = k;
          av.content = cls.content;
          av.group = group;
          av.norm_factor = norms[a];
          av.label = chosen[a] == seed_coords ? primary_label(s)
                                              : "aux:" + group_name(group) + ":" + content_string(cls.content) + ":" + std::to_string(a);
          frame.vectors.push_back(std::move(av));
        }
        found += chosen.size();
      }
      if (found != cls.indices.size())
        throw UnsupportedCase("slot groups do not decompose the content class " + content_string(cls.content));
    }
  }
  if (static_cast<int>(frame.vectors.size()) != n) throw std::logic_error("adapted frame has the wrong size");

  frame.to_hall = Matrix<Rational>(n, n);
  for (int j = 0; j < n; ++j)
    for (const auto& [i, c] : frame.vectors[j].vector.terms()) frame.to_hall(i, j) = c;
  frame.from_hall = block_inverse(frame.to_hall);

  // Gram entries.
  frame.gram.assign(n, {});
  for (int i = 0; i < n; ++i) {
    const AdaptedVector& av = frame.vectors[i];
    if (av.group == kGroupScale) {
      frame.gram[i].emplace_back(i, Laurent(generator_scale * av.norm_factor));
    } else if (av.pair_position < 0) {
      frame.gram[i].emplace_back(i, Laurent::variable(av.group) * av.norm_factor);
    } else {
      const auto& slots = family.degree_slots(av.degree);
      const int base = alg.degree_begin(av.degree);
      const Vec x = coords(alg, av.vector);
      for (int j : {i, av.partner}) {
        const Vec y = coords(alg, frame.vectors[j].vector);
        Laurent entry;
        for (const SlotMatrix& sm : slots) {
          const Rational v = form(sm.block, base, x, y);
          if (sgn(v) == 0) continue;
          if (group_of(sm.slot) != av.group) throw std::logic_error("block vector sees a foreign slot");
          entry += Laurent::variable(static_cast<int>(sm.slot)) * v;
        }
        frame.gram[i].emplace_back(j, entry);
      }
    }
  }
  return frame;
}

SymbolicRicci symbolic_ricci(const FreeLieAlgebra& alg, const AdmissibleFamily& family, const Rational& generator_scale,
                             const StopCheck& should_stop) {
  const auto poll = [&] {
    if (should_stop && should_stop()) throw CancelledError("symbolic Ricci assembly cancelled");
  };
  poll();
  SymbolicRicci out;
  out.frame = adapted_frame(alg, family, generator_scale);
  const AdaptedFrame& fr = out.frame;
  const int n = alg.dimension();
  const int p = alg.step();
  using SparseL = std::vector<std::pair<int, Rational>>;

  // Structure constants in the frame.
  std::vector<std::vector<std::pair<int, SparseL>>> c(n);
  for (int i = 0; i < n; ++i) {
    poll();
    for (int j = 0; j < n; ++j) {
      if (i == j || fr.vectors[i].degree + fr.vectors[j].degree > p) continue;
      const Element b = alg.bracket(fr.vectors[i].vector, fr.vectors[j].vector);
      if (b.is_zero()) continue;
      SparseL v;
      std::vector<Rational> acc(n);
      for (const auto& [h, coef] : b.terms())
        for (int x = 0; x < n; ++x)
          if (sgn(fr.from_hall(x, h)) != 0) acc[x] += fr.from_hall(x, h) * coef;
      for (int x = 0; x < n; ++x)
        if (sgn(acc[x]) != 0) v.emplace_back(x, acc[x]);
      c[i].emplace_back(j, std::move(v));
    }
  }

  auto inverse_norm = [&](int i) {
    if (fr.vectors[i].pair_position >= 0)
      throw UnsupportedCase("block vectors below the top degree are not supported symbolically");
    return fr.gram[i][0].second.monomial_inverse();
  };
  // Gamma applied to a frame vector.
  auto gamma_apply = [&](const SparseL& v) {
    std::map<int, Laurent> r;
    for (const auto& [x, coef] : v)
      for (const auto& [y, g] : fr.gram[x]) r[y] += g * coef;
    return r;
  };

  std::map<std::pair<int, int>, Laurent> acc;
  // First term.
  std::map<int, std::map<std::pair<int, int>, Laurent>> block_n;  // first vector of pair -> N entries
  for (int i = 0; i < n; ++i) {
    poll();
    for (const auto& [j, cij] : c[i]) {
      const Laurent k = inverse_norm(i) * inverse_norm(j) * Rational(1, 4);
      const auto g = gamma_apply(cij);
      for (auto xi = g.begin(); xi != g.end(); ++xi)
        for (auto yi = xi; yi != g.end(); ++yi) acc[{xi->first, yi->first}] += k * xi->second * yi->second;
      for (const auto& [x, cx] : cij) {
        if (fr.vectors[x].pair_position != 0) continue;
        const int partner = fr.vectors[x].partner;
        Rational cp = 0;
        for (const auto& [y, cy] : cij)
          if (y == partner) cp = cy;
        auto& nmat = block_n[x];
        nmat[{0, 0}] += k * (cx * cx);
        nmat[{0, 1}] += k * (cx * cp);
        nmat[{1, 1}] += k * (cp * cp);
      }
      for (const auto& [y, cy] : cij) {
        // Pairs where only the second vector appears.
        if (fr.vectors[y].pair_position != 1) continue;
        bool first_present = false;
        for (const auto& [x, cx] : cij)
          if (x == fr.vectors[y].partner) first_present = true;
        if (!first_present) block_n[fr.vectors[y].partner][{1, 1}] += k * (cy * cy);
      }
    }
  }
  // Second term.
  for (int x = 0; x < n; ++x) {
    poll();
    for (const auto& [i, cxi] : c[x]) {
      const Laurent k = inverse_norm(i) * Rational(-1, 2);
      const auto g = gamma_apply(cxi);
      for (int y = x; y < n; ++y) {
        if (fr.vectors[y].degree != fr.vectors[x].degree) continue;
        for (const auto& [ii, cyi] : c[y]) {
          if (ii != i) continue;
          Laurent dot;
          for (const auto& [z, cz] : cyi)
            if (auto it = g.find(z); it != g.end()) dot += it->second * cz;
          if (!dot.is_zero()) acc[{x, y}] += k * dot;
        }
      }
    }
  }

  for (auto& [key, v] : acc) {
    if (v.is_zero()) continue;
    if (fr.vectors[key.first].content != fr.vectors[key.second].content)
      throw std::logic_error("Ricci form couples different contents");
    out.entries.emplace(key, std::move(v));
  }

  for (int x = 0; x < n; ++x) {
    const AdaptedVector& av = fr.vectors[x];
    if (av.pair_position != 0) continue;
    if (av.degree != p) throw UnsupportedCase("block pairs must lie in the top degree");
    const int y = av.partner;
    const auto& nmat = block_n[x];
    auto nget = [&](int a, int b) {
      auto it = nmat.find({std::min(a, b), std::max(a, b)});
      return it == nmat.end() ? Laurent() : it->second;
    };
    const int idx[2] = {x, y};
    Laurent trace;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) trace += nget(a, b) * fr.gram_entry(idx[b], idx[a]);
    out.block_traces.push_back({av.label, av.group, x, y, av.degree, trace});
  }
  return out;
}

}  // namespace nilsolv
