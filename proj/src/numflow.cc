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


#include "nilsolv/numflow.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <future>
#include <random>
#include <vector>

#include "nilsolv/errors.h"
#include "nilsolv/freelie.h"
#include "nilsolv/metric.h"
#include "nilsolv/nilsoliton.h"

namespace nilsolv {

void FlowConfig::validate() const {
  if (restarts < 1) throw DomainError("flow: restarts must be at least 1");
  if (max_iterations < 1) throw DomainError("flow: max iterations must be at least 1");
  if (!(tolerance > 0)) throw DomainError("flow: tolerance must be positive");
}

namespace {

// Unknowns: log of each scalar slot, a log-Cholesky factor per V/W block
// (log a, b, log c for [[a, 0], [b, c]]), and log C.
class Problem {
 public:
  Problem(int m, int p, double floor)
      : alg_(build_algebra(m, p)), family_(admissible_family(alg_)), table_(bracket_table<double>(alg_)),
        floor_(floor) {
    for (Slot s : family_.slots()) {
      if (s == Slot::kLambda) continue;
      if (!is_block_slot(s)) scalar_.push_back(s);
      if (s == Slot::kV11) blocks_.push_back(Slot::kV11);
      if (s == Slot::kW11) blocks_.push_back(Slot::kW11);
    }
    for (int k = 1; k <= p; ++k) kappa_.push_back(degree_constant(alg_, k).get_d());
    for (int k = 1; k <= p; ++k) {
      tr_ += k * static_cast<double>(alg_.degree_size(k));
      tr2_ += k * k * static_cast<double>(alg_.degree_size(k));
    }
  }

  int size() const { return static_cast<int>(scalar_.size() + 3 * blocks_.size() + 1); }

  std::array<double, kSlotCount> slot_values(const std::vector<double>& x) const {
    std::array<double, kSlotCount> v{};
    v[static_cast<int>(Slot::kLambda)] = 1;
    std::size_t i = 0;
    for (Slot s : scalar_) v[static_cast<int>(s)] = std::max(std::exp(x[i++]), floor_);
    for (Slot b : blocks_) {
      const double a = std::max(std::exp(x[i]), floor_), off = x[i + 1], c = std::max(std::exp(x[i + 2]), floor_);
      const int base = static_cast<int>(b);
      v[base] = a * a;
      v[base + 1] = a * off;
      v[base + 2] = off * off + c * c;
      i += 3;
    }
    return v;
  }
  double C(const std::vector<double>& x) const { return std::max(std::exp(x.back()), floor_); }

  // ric - (c id + phi) as an operator; entries of the degree blocks.
  Matrix<double> residual_operator(const std::vector<double>& x) const {
    const Matrix<double> gram = family_.gram(slot_values(x), 1.0);
    Matrix<double> op = ricci_nilpotent(table_, gram).operator_matrix();
    const double c = C(x);
    for (int k = 1; k <= alg_.step(); ++k)
      for (int i = alg_.degree_begin(k); i < alg_.degree_end(k); ++i) op(i, i) -= kappa_[k - 1] * c;
    return op;
  }

  // Points where the Gram matrix degenerates numerically evaluate to +inf.
  std::vector<double> residual(const std::vector<double>& x) const {
    Matrix<double> op;
    try {
      op = residual_operator(x);
    } catch (const DomainError&) {
      return std::vector<double>(1, std::numeric_limits<double>::infinity());
    }
    std::vector<double> r;
    for (int k = 1; k <= alg_.step(); ++k)
      for (int i = alg_.degree_begin(k); i < alg_.degree_end(k); ++i)
        for (int j = alg_.degree_begin(k); j < alg_.degree_end(k); ++j) r.push_back(op(i, j));
    return r;
  }

  double trace_identity_defect(const std::vector<double>& x) const {
    // ric = c id + phi with c = -C Tr Phi^2; phi = ric - c id.
    const Matrix<double> gram = family_.gram(slot_values(x), 1.0);
    const Matrix<double> ric = ricci_nilpotent(table_, gram).operator_matrix();
    const double c = -C(x) * tr2_;
    double tr_phi_Phi = 0;
    for (int k = 1; k <= alg_.step(); ++k)
      for (int i = alg_.degree_begin(k); i < alg_.degree_end(k); ++i) tr_phi_Phi += k * (ric(i, i) - c);
    return std::abs(tr_phi_Phi + c * tr_);
  }

  std::map<std::string, double> named(const std::vector<double>& x) const {
    std::map<std::string, double> out;
    const auto v = slot_values(x);
    for (Slot s : family_.slots())
      if (s != Slot::kLambda) out[std::string(slot_name(s))] = v[static_cast<int>(s)];
    return out;
  }

  const FreeLieAlgebra& algebra() const { return alg_; }

 private:
  FreeLieAlgebra alg_;
  AdmissibleFamily family_;
  BracketTable<double> table_;
  double floor_;
  std::vector<Slot> scalar_;
  std::vector<Slot> blocks_;
  std::vector<double> kappa_;
  double tr_ = 0, tr2_ = 0;
};

// Squared parameters stay within exp(+-kLogBound).
constexpr double kLogBound = 30;

double squared_norm(const std::vector<double>& r) {
  double s = 0;
  for (double v : r) s += v * v;
  return s;
}

// Solves the small dense system a x = b by Gaussian elimination with partial pivoting.
std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    if (a[c][c] == 0) return std::vector<double>(n, 0.0);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

struct RunResult {
  std::vector<double> x;
  double objective = 0;
  int iterations = 0;
  std::vector<double> history;
};

RunResult run_once(const Problem& prob, const FlowConfig& cfg, std::vector<double> x) {
  const int n = prob.size();
  std::vector<double> r = prob.residual(x);
  double f = squared_norm(r);
  if (!std::isfinite(f)) return {x, f, 0, {}};
  double mu = 1e-3;
  const double target = cfg.tolerance * cfg.tolerance;
  int it = 0;
  std::vector<double> history{f};
  for (; it < cfg.max_iterations && f > target; ++it) {
    // Central differences.
    std::vector<std::vector<double>> jac(n);
    for (int j = 0; j < n; ++j) {
      const double h = 1e-6 * std::max(1.0, std::abs(x[j]));
      std::vector<double> xp = x, xm = x;
      xp[j] += h;
      xm[j] -= h;
      const auto rp = prob.residual(xp), rm = prob.residual(xm);
      jac[j].assign(r.size(), 0.0);
      if (rp.size() != r.size() || rm.size() != r.size()) continue;
      for (std::size_t i = 0; i < r.size(); ++i) jac[j][i] = (rp[i] - rm[i]) / (2 * h);
    }
    std::vector<std::vector<double>> jtj(n, std::vector<double>(n, 0.0));
    std::vector<double> jtr(n, 0.0);
    for (int a = 0; a < n; ++a) {
      for (int b = a; b < n; ++b) {
        double s = 0;
        for (std::size_t i = 0; i < r.size(); ++i) s += jac[a][i] * jac[b][i];
        jtj[a][b] = jtj[b][a] = s;
      }
      for (std::size_t i = 0; i < r.size(); ++i) jtr[a] -= jac[a][i] * r[i];
    }
    for (int a = 0; a < n; ++a) jtj[a][a] += mu * (1.0 + jtj[a][a]);
    const std::vector<double> step = dense_solve(jtj, jtr);

    // Backtracking: halve the step until the objective decreases.
    bool accepted = false;
    for (double t = 1.0; t > 1e-10; t *= 0.5) {
      std::vector<double> xn = x;
      for (int j = 0; j < n; ++j) xn[j] = std::clamp(xn[j] + t * step[j], -kLogBound, kLogBound);
      const auto rn = prob.residual(xn);
      const double fn = squared_norm(rn);
      if (std::isfinite(fn) && fn < f) {
        x = std::move(xn);
        r = rn;
        f = fn;
        history.push_back(f);
        accepted = true;
        mu = t == 1.0 ? std::max(mu / 3, 1e-12) : mu;
        break;
      }
    }
    if (!accepted) {
      mu *= 10;
      if (mu > 1e12) break;
    }
  }
  return {x, f, it, std::move(history)};
}

}  // namespace

FlowResult residual_minimize(int m, int p, const FlowConfig& cfg) {
  cfg.validate();
  const Problem prob(m, p, cfg.positivity_floor);
  const double c0 = solve_free(m, 2).solution->C.to_double();

  auto start = [&](int restart) {
    std::seed_seq seq{static_cast<std::uint64_t>(cfg.seed), static_cast<std::uint64_t>(restart)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> u(std::log(1e-2), std::log(1e2));
    std::vector<double> x(prob.size());
    for (int j = 0; j + 1 < prob.size(); ++j) x[j] = u(rng);
    x.back() = std::log(c0);
    return run_once(prob, cfg, x);
  };

  std::vector<std::future<RunResult>> jobs;
  for (int i = 0; i < cfg.restarts; ++i) jobs.push_back(std::async(std::launch::async, start, i));
  RunResult best;
  int best_index = -1;
  for (int i = 0; i < cfg.restarts; ++i) {
    RunResult r = jobs[i].get();
    if (best_index < 0 || r.objective < best.objective) {
      best = std::move(r);
      best_index = i;
    }
  }

  FlowResult out;
  out.params = prob.named(best.x);
  out.C = prob.C(best.x);
  out.residual = std::sqrt(best.objective);
  out.iterations = best.iterations;
  out.history = std::move(best.history);
  out.best_restart = best_index;
  out.converged = out.residual < cfg.tolerance;
  out.trace_identity_defect = prob.trace_identity_defect(best.x);
  return out;
}

}  // namespace nilsolv
