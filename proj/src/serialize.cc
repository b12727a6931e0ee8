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


#include "nilsolv/serialize.h"

#include <utility>
#include <vector>

#include "nilsolv/errors.h"

namespace nilsolv {

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw DomainError(std::string("JSON: missing key \"") + key + "\"");
  return j.at(key);
}

void add_float(Json& j, const std::string& key, double value, const JsonOptions& opts) {
  if (opts.with_float) j[key + "_float"] = value;
}

}  // namespace

Json to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
  if (!j.is_string()) throw DomainError("JSON: expected a rational string");
  return parse_rational(j.get<std::string>());
}

Json to_json(const QuadraticNumber& x) {
  if (x.is_rational()) return to_json(x.rational_part());
  Json j;
  j["a"] = to_json(x.rational_part());
  j["b"] = to_json(x.irrational_part());
  j["sqrt"] = x.radicand();
  return j;
}

QuadraticNumber quadratic_from_json(const Json& j) {
  if (j.is_string()) return QuadraticNumber(rational_from_json(j));
  return QuadraticNumber(rational_from_json(require(j, "a")), rational_from_json(require(j, "b")),
                         require(j, "sqrt").get<long>());
}

Json to_json(const Polynomial& p, const std::string& variable) {
  Json j;
  j["variable"] = variable;
  Json coeffs = Json::array();
  for (const Rational& c : p.coefficients()) coeffs.push_back(to_json(c));
  j["coefficients"] = coeffs;  // constant term first
  j["text"] = p.to_string(variable);
  return j;
}

Polynomial polynomial_from_json(const Json& j) {
  std::vector<Rational> coeffs;
  for (const Json& c : require(j, "coefficients")) coeffs.push_back(rational_from_json(c));
  return Polynomial(coeffs);
}

Json to_json(const Laurent& x) {
  Json j;
  j["text"] = x.to_string();
  Json terms = Json::array();
  for (const auto& [mono, c] : x.terms()) terms.push_back(Json{{"monomial", to_string(mono)}, {"coefficient", to_json(c)}});
  j["terms"] = terms;
  return j;
}

Laurent laurent_from_json(const Json& j) {
  Laurent out;
  for (const Json& t : require(j, "terms"))
    out.add_term(parse_monomial(require(t, "monomial").get<std::string>()), rational_from_json(require(t, "coefficient")));
  return out;
}

Json to_json(const EigenvalueType& t) {
  Json j;
  Json mu = Json::array(), d = Json::array();
  for (const Rational& x : t.mu) mu.push_back(to_json(x));
  for (const Integer& x : t.multiplicity) d.push_back(x.get_str());
  j["mu"] = mu;
  j["multiplicity"] = d;
  return j;
}

EigenvalueType eigenvalue_type_from_json(const Json& j) {
  EigenvalueType t;
  for (const Json& x : require(j, "mu")) t.mu.push_back(rational_from_json(x));
  for (const Json& x : require(j, "multiplicity")) t.multiplicity.emplace_back(x.get<std::string>());
  t.validate();
  return t;
}

Json to_json(const ConeCertificate& c) {
  Json j;
  j["feasible"] = c.feasible;
  if (c.feasible) {
    Json w = Json::array();
    for (const auto& [key, value] : c.weights)
      w.push_back(Json{{"i", key.first + 1}, {"j", key.second + 1}, {"T", to_json(value)}});
    j["weights"] = w;
  } else {
    Json a = Json::array();
    for (const Rational& x : c.separator) a.push_back(to_json(x));
    j["separator"] = a;
  }
  return j;
}

ConeCertificate cone_certificate_from_json(const Json& j) {
  ConeCertificate c;
  c.feasible = require(j, "feasible").get<bool>();
  if (c.feasible) {
    for (const Json& w : require(j, "weights"))
      c.weights[{require(w, "i").get<int>() - 1, require(w, "j").get<int>() - 1}] = rational_from_json(require(w, "T"));
  } else {
    for (const Json& x : require(j, "separator")) c.separator.push_back(rational_from_json(x));
  }
  return c;
}

Json to_json(const ScreenResult& s) {
  Json j;
  j["m"] = s.m;
  j["p"] = s.p;
  j["verdict"] = s.survivor ? "Survivor" : "Screened";
  j["type"] = to_json(s.type);
  j["certificate"] = s.p <= 2 ? Json(nullptr) : to_json(s.certificate);
  return j;
}

ScreenResult screen_result_from_json(const Json& j) {
  ScreenResult s;
  s.m = require(j, "m").get<int>();
  s.p = require(j, "p").get<int>();
  s.survivor = require(j, "verdict").get<std::string>() == "Survivor";
  s.type = eigenvalue_type_from_json(require(j, "type"));
  if (!require(j, "certificate").is_null()) s.certificate = cone_certificate_from_json(j.at("certificate"));
  return s;
}

namespace {

Json combination_json(const Combination& c) {
  Json j;
  j["type"] = "positive-combination";
  Json w = Json::array();
  for (std::size_t i = 0; i < c.weights.size(); ++i) {
    Json item;
    item["index"] = c.weights[i].first;
    if (i < c.labels.size()) item["equation"] = c.labels[i];
    item["weight"] = to_json(c.weights[i].second);
    w.push_back(item);
  }
  j["weights"] = w;
  j["lhs"] = to_json(c.lhs);
  j["rhs_C"] = to_json(c.rhs);
  return j;
}

}  // namespace

Json to_json(const ClassificationOutcome& o, const JsonOptions& opts) {
  Json j;
  j["m"] = o.m;
  j["p"] = o.p;
  j["verdict"] = std::string(verdict_name(o.verdict));
  if (o.solution) {
    const EinsteinSolution& s = *o.solution;
    Json params;
    for (int i = 0; i < kSlotCount; ++i) {
      if (!s.slots[i]) continue;
      const std::string name(slot_name(static_cast<Slot>(i)));
      params[name] = to_json(*s.slots[i]);
      add_float(params, name, s.slots[i]->to_double(), opts);
    }
    Json sol;
    sol["squared_norms"] = params;
    sol["C"] = to_json(s.C);
    add_float(sol, "C", s.C.to_double(), opts);
    sol["C_minimal_polynomial"] = to_json(s.c_minimal_polynomial, "C");
    sol["exact_residual_zero"] = s.exact_residual_zero;
    sol["float_residual"] = s.float_residual;
    j["parameters"] = sol;
  } else {
    j["parameters"] = nullptr;
  }
  if (o.combination) {
    j["certificate"] = combination_json(*o.combination);
  } else if (o.univariate) {
    Json c;
    c["type"] = "univariate";
    c["polynomial"] = to_json(o.univariate->polynomial, o.univariate->variable);
    Json rel = Json::array();
    for (const Integer& r : o.univariate->relation) rel.push_back(r.get_si());
    c["relation"] = rel;
    j["certificate"] = c;
  } else if (o.cone) {
    Json c = to_json(*o.cone);
    c["type"] = "cone";
    j["certificate"] = c;
  } else {
    j["certificate"] = nullptr;
  }
  if (o.extension) {
    Json e;
    e["c"] = to_json(o.extension->einstein_constant);
    add_float(e, "c", o.extension->einstein_constant.to_double(), opts);
    e["c_hat"] = to_json(o.extension->c_hat);
    add_float(e, "c_hat", o.extension->c_hat.to_double(), opts);
    e["H_norm_sq"] = to_json(o.extension->h_norm_sq);
    add_float(e, "H_norm_sq", o.extension->h_norm_sq.to_double(), opts);
    e["dim_g"] = o.extension->dimension;
    j["extension"] = e;
  } else {
    j["extension"] = nullptr;
  }
  return j;
}

ClassificationOutcome outcome_from_json(const Json& j) {
  ClassificationOutcome o;
  o.m = require(j, "m").get<int>();
  o.p = require(j, "p").get<int>();
  const std::string v = require(j, "verdict").get<std::string>();
  if (v == "EinsteinNilradical") o.verdict = Verdict::kEinsteinNilradical;
  else if (v == "NotEinstein") o.verdict = Verdict::kNotEinstein;
  else if (v == "Screened") o.verdict = Verdict::kScreened;
  else throw DomainError("JSON: unknown verdict " + v);

  if (const Json& sj = require(j, "parameters"); !sj.is_null()) {
    EinsteinSolution s;
    for (const auto& [name, value] : require(sj, "squared_norms").items()) {
      if (name.size() > 6 && name.ends_with("_float")) continue;
      const auto slot = slot_from_name(name);
      if (!slot) throw DomainError("JSON: unknown parameter " + name);
      s.slots[static_cast<int>(*slot)] = quadratic_from_json(value);
    }
    s.C = quadratic_from_json(require(sj, "C"));
    s.c_minimal_polynomial = polynomial_from_json(require(sj, "C_minimal_polynomial"));
    s.radicand = s.C.radicand();
    for (const auto& x : s.slots)
      if (x && !x->is_rational()) s.radicand = x->radicand();
    s.exact_residual_zero = require(sj, "exact_residual_zero").get<bool>();
    s.float_residual = require(sj, "float_residual").get<double>();
    o.solution = s;
  }
  if (const Json& cj = require(j, "certificate"); !cj.is_null()) {
    const std::string type = require(cj, "type").get<std::string>();
    if (type == "positive-combination") {
      Combination c;
      for (const Json& w : require(cj, "weights")) {
        c.weights.emplace_back(require(w, "index").get<int>(), rational_from_json(require(w, "weight")));
        if (w.contains("equation")) c.labels.push_back(w["equation"].get<std::string>());
      }
      c.lhs = laurent_from_json(require(cj, "lhs"));
      c.rhs = rational_from_json(require(cj, "rhs_C"));
      o.combination = c;
    } else if (type == "univariate") {
      UnivariateCertificate u;
      const Json& pj = require(cj, "polynomial");
      u.variable = require(pj, "variable").get<std::string>();
      u.polynomial = polynomial_from_json(pj);
      for (const Json& r : require(cj, "relation")) u.relation.emplace_back(r.get<long>());
      o.univariate = u;
    } else if (type == "cone") {
      o.cone = cone_certificate_from_json(cj);
    } else {
      throw DomainError("JSON: unknown certificate type " + type);
    }
  }
  if (const Json& ej = require(j, "extension"); !ej.is_null()) {
    ExtensionData e;
    e.einstein_constant = quadratic_from_json(require(ej, "c"));
    e.c_hat = quadratic_from_json(require(ej, "c_hat"));
    e.h_norm_sq = quadratic_from_json(require(ej, "H_norm_sq"));
    e.dimension = require(ej, "dim_g").get<int>();
    o.extension = e;
  }
  return o;
}

Json to_json(const ClassificationReport& r, const JsonOptions& opts) {
  Json j;
  Json cases = Json::array();
  for (const auto& c : r.cases) cases.push_back(to_json(c, opts));
  j["cases"] = cases;
  Json gaps = Json::array();
  for (const auto& g : r.gaps) gaps.push_back(Json{{"m", g.m}, {"p", g.p}, {"reason", g.reason}});
  j["gaps"] = gaps;
  j["matches_classification"] = report_matches_classification(r);
  return j;
}

ClassificationReport report_from_json(const Json& j) {
  ClassificationReport r;
  for (const Json& c : require(j, "cases")) r.cases.push_back(outcome_from_json(c));
  for (const Json& g : require(j, "gaps"))
    r.gaps.push_back({require(g, "m").get<int>(), require(g, "p").get<int>(), require(g, "reason").get<std::string>()});
  return r;
}

Json to_json(int m, int p, const FlowResult& r) {
  Json j;
  j["m"] = m;
  j["p"] = p;
  j["evidence_only"] = true;
  Json params;
  for (const auto& [name, v] : r.params) params[name] = v;
  j["squared_norms"] = params;
  j["C"] = r.C;
  j["residual"] = r.residual;
  j["iterations"] = r.iterations;
  j["best_restart"] = r.best_restart;
  j["converged"] = r.converged;
  j["trace_identity_defect"] = r.trace_identity_defect;
  return j;
}

FlowResult flow_result_from_json(const Json& j) {
  FlowResult r;
  for (const auto& [name, v] : require(j, "squared_norms").items()) r.params[name] = v.get<double>();
  r.C = require(j, "C").get<double>();
  r.residual = require(j, "residual").get<double>();
  r.iterations = require(j, "iterations").get<int>();
  r.best_restart = require(j, "best_restart").get<int>();
  r.converged = require(j, "converged").get<bool>();
  r.trace_identity_defect = require(j, "trace_identity_defect").get<double>();
  return r;
}

MetricParams metric_params_from_json(const Json& j) {
  if (!j.is_object()) throw DomainError("parameter file must be a JSON object");
  MetricParams params;
  for (const auto& [name, value] : j.items()) {
    if (name == "generator_scale") {
      params.generator_scale = rational_from_json(value);
      if (sgn(params.generator_scale) <= 0) throw DomainError("generator_scale must be positive");
      continue;
    }
    const auto slot = slot_from_name(name);
    if (!slot) throw DomainError("unknown parameter \"" + name + "\"");
    if (value.is_string() && value.get<std::string>() == "symbolic") continue;
    params.set(*slot, rational_from_json(value));
  }
  return params;
}

}  // namespace nilsolv
