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


#include "nilsolv/cone.h"

#include <future>
#include <sstream>
#include <stdexcept>

#include "nilsolv/errors.h"
#include "nilsolv/freelie.h"
#include "nilsolv/lp.h"

namespace nilsolv {

void EigenvalueType::validate() const {
  if (mu.empty()) throw DomainError("eigenvalue type: no eigenvalues");
  if (mu.size() != multiplicity.size()) throw DomainError("eigenvalue type: eigenvalue and multiplicity counts differ");
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (sgn(mu[i]) <= 0) throw DomainError("eigenvalue type: eigenvalues must be positive");
    if (i > 0 && !(mu[i - 1] < mu[i])) throw DomainError("eigenvalue type: eigenvalues must increase strictly");
    if (multiplicity[i] < 1) throw DomainError("eigenvalue type: multiplicities must be at least 1");
  }
}

Rational EigenvalueType::trace() const {
  Rational s = 0;
  for (std::size_t i = 0; i < mu.size(); ++i) s += Rational(multiplicity[i]) * mu[i];
  return s;
}

Rational EigenvalueType::trace_squares() const {
  Rational s = 0;
  for (std::size_t i = 0; i < mu.size(); ++i) s += Rational(multiplicity[i]) * mu[i] * mu[i];
  return s;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

EigenvalueType parse_eigenvalue_type(const std::string& text) {
  const auto halves = split(text, ';');
  if (halves.size() != 2) throw DomainError("eigenvalue type must look like \"mu1,mu2,...;d1,d2,...\"");
  EigenvalueType t;
  for (const auto& item : split(halves[0], ',')) t.mu.push_back(parse_rational(trim(item)));
  for (const auto& item : split(halves[1], ',')) {
    const Rational d = parse_rational(trim(item));
    if (d.get_den() != 1) throw DomainError("eigenvalue type: multiplicities must be integers");
    t.multiplicity.push_back(d.get_num());
  }
  t.validate();
  return t;
}

EigenvalueType canonical_type(int m, int p) {
  EigenvalueType t;
  for (int k = 1; k <= p; ++k) {
    t.mu.emplace_back(k);
    t.multiplicity.emplace_back(static_cast<unsigned long>(witt_dimension(m, k)));
  }
  return t;
}

std::vector<Rational> cone_vector(const EigenvalueType& t) {
  t.validate();
  const int p = t.size();
  std::vector<Rational> v(p);
  for (int k = 0; k < p; ++k) {
    Rational s = 0;
    for (int i = 0; i < p; ++i) s += Rational(t.multiplicity[i]) * t.mu[i] * (t.mu[k] - t.mu[i]);
    v[k] = Rational(t.multiplicity[k]) * s;
  }
  return v;
}

std::vector<Root> root_set(const EigenvalueType& t) {
  t.validate();
  const int p = t.size();
  std::vector<Root> out;
  for (int i = 0; i < p; ++i)
    for (int j = i; j < p; ++j)
      for (int k = 0; k < p; ++k) {
        if (t.mu[i] + t.mu[j] != t.mu[k]) continue;
        Root r{i, j, k, std::vector<Integer>(p, Integer(0))};
        r.vector[k] += 1;
        r.vector[i] -= 1;
        r.vector[j] -= 1;
        out.push_back(std::move(r));
      }
  return out;
}

namespace {

// Column of T_ij in the linear system: 2(f_k - f_i - f_j) for i < j, f_k - 2 f_i for i = j.
std::vector<Rational> system_column(const Root& r) {
  std::vector<Rational> col(r.vector.size());
  const int scale = r.i == r.j ? 1 : 2;
  for (std::size_t c = 0; c < col.size(); ++c) col[c] = Rational(r.vector[c] * scale);
  return col;
}

std::vector<Rational> system_rhs(const EigenvalueType& t) {
  auto v = cone_vector(t);
  const Rational tr = t.trace();
  for (auto& x : v) x = 4 * x / tr;
  return v;
}

}  // namespace

bool is_separating(const EigenvalueType& t, const std::vector<Rational>& a) {
  if (static_cast<int>(a.size()) != t.size()) return false;
  for (const Root& r : root_set(t)) {
    Rational s = 0;
    for (int c = 0; c < t.size(); ++c) s += a[c] * Rational(r.vector[c]);
    if (sgn(s) > 0) return false;
  }
  const auto v = cone_vector(t);
  Rational s = 0;
  for (int c = 0; c < t.size(); ++c) s += a[c] * v[c];
  return sgn(s) > 0;
}

bool verify_certificate(const EigenvalueType& t, const ConeCertificate& cert) {
  if (!cert.feasible) return is_separating(t, cert.separator);
  const auto roots = root_set(t);
  std::vector<Rational> lhs(t.size(), Rational(0));
  for (const auto& [key, w] : cert.weights) {
    if (sgn(w) < 0) return false;
    const Root* found = nullptr;
    for (const Root& r : roots)
      if (r.i == key.first && r.j == key.second) found = &r;
    if (found == nullptr) return false;
    const auto col = system_column(*found);
    for (int c = 0; c < t.size(); ++c) lhs[c] += w * col[c];
  }
  return lhs == system_rhs(t);
}

ConeCertificate cone_test(const EigenvalueType& t) {
  const auto roots = root_set(t);
  const auto b = system_rhs(t);
  Matrix<Rational> a(t.size(), roots.size());
  for (std::size_t r = 0; r < roots.size(); ++r) {
    const auto col = system_column(roots[r]);
    for (int c = 0; c < t.size(); ++c) a(c, r) = col[c];
  }
  const FeasibilityResult lp = solve_feasibility(a, b);
  ConeCertificate cert;
  cert.feasible = lp.feasible;
  if (lp.feasible) {
    for (std::size_t r = 0; r < roots.size(); ++r)
      if (sgn(lp.x[r]) != 0) cert.weights[{roots[r].i, roots[r].j}] = lp.x[r];
  } else {
    cert.separator = primitive_integer(lp.y);
  }
  if (!verify_certificate(t, cert)) throw std::logic_error("cone_test: certificate failed verification");
  return cert;
}

ScreenResult screen_free(int m, int p) {
  if (m < 2 || p < 1) throw DomainError("screen_free: need m >= 2 and p >= 1");
  if (p > kMaxScreenStep) throw ResourceError("screen_free: step above the screening ceiling", p);
  ScreenResult out;
  out.m = m;
  out.p = p;
  out.type = canonical_type(m, p);
  if (p <= 2) return out;
  out.certificate = cone_test(out.type);
  out.survivor = out.certificate.feasible;
  return out;
}

std::vector<ScreenResult> screen_grid(int max_m, int max_p) {
  std::vector<std::future<ScreenResult>> jobs;
  for (int m = 2; m <= max_m; ++m)
    for (int p = 3; p <= max_p; ++p) jobs.push_back(std::async(std::launch::async, screen_free, m, p));
  std::vector<ScreenResult> out;
  out.reserve(jobs.size());
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

}  // namespace nilsolv
