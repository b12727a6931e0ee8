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


#include "nilsolv/cli.h"

#include <chrono>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nilsolv/cone.h"
#include "nilsolv/errors.h"
#include "nilsolv/freelie.h"
#include "nilsolv/metric.h"
#include "nilsolv/nilsoliton.h"
#include "nilsolv/numflow.h"
#include "nilsolv/serialize.h"

namespace nilsolv {

namespace {

enum class Format { kJson, kCsv, kText };

struct Output {
  Format format = Format::kJson;
  JsonOptions json;
  std::ostream* out = nullptr;

  void emit(const Json& j) const { *out << j.dump(2) << "\n"; }
};

std::string content_string(const std::vector<int>& c) {
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "." : "") + std::to_string(c[i]);
  return s;
}

std::string value_text(const QuadraticNumber& x) { return x.is_rational() ? to_string(x.rational_part()) : x.to_string(); }

// ---- subcommands ----

void cmd_dims(const Output& o, int m, int max_k) {
  if (m < 1 || max_k < 1) throw DomainError("dims: need --m >= 1 and --max-k >= 1");
  Json rows = Json::array();
  std::uint64_t total = 0;
  for (int k = 1; k <= max_k; ++k) {
    const std::uint64_t d = witt_dimension(m, k);
    total += d;
    rows.push_back(Json{{"k", k}, {"dimension", d}, {"cumulative", total}});
  }
  if (o.format == Format::kJson) {
    o.emit(Json{{"m", m}, {"rows", rows}});
  } else if (o.format == Format::kCsv) {
    *o.out << "m,k,dimension,cumulative\n";
    for (const auto& r : rows) *o.out << m << "," << r["k"] << "," << r["dimension"] << "," << r["cumulative"] << "\n";
  } else {
    for (const auto& r : rows) *o.out << "dim p(" << m << ", " << r["k"] << ") = " << r["dimension"] << "\n";
  }
}

void cmd_basis(const Output& o, int m, int p) {
  const FreeLieAlgebra alg = build_algebra(m, p);
  if (o.format == Format::kJson) {
    Json basis = Json::array();
    for (int i = 0; i < alg.dimension(); ++i)
      basis.push_back(Json{{"index", i}, {"degree", alg.degree(i)}, {"content", alg.content(i)},
                           {"tree", alg.tree_string(i)}});
    Json brackets = Json::array();
    for (const auto& e : alg.structure()) {
      Json value = Json::object();
      for (const auto& [idx, c] : e.value.terms()) value[std::to_string(idx)] = to_json(c);
      brackets.push_back(Json{{"a", e.a}, {"b", e.b}, {"value", value}});
    }
    o.emit(Json{{"m", m}, {"p", p}, {"dimension", alg.dimension()}, {"basis", basis}, {"brackets", brackets}});
  } else if (o.format == Format::kCsv) {
    *o.out << "index,degree,content,tree\n";
    for (int i = 0; i < alg.dimension(); ++i)
      *o.out << i << "," << alg.degree(i) << "," << content_string(alg.content(i)) << ",\"" << alg.tree_string(i)
             << "\"\n";
  } else {
    for (int i = 0; i < alg.dimension(); ++i)
      *o.out << i << "  degree " << alg.degree(i) << "  " << alg.tree_string(i) << "\n";
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw DomainError(path + ": " + e.what());
  }
}

void cmd_ricci(const Output& o, int m, int p, const std::string& params_path) {
  const MetricParams params = metric_params_from_json(read_json_file(params_path));
  const FreeLieAlgebra alg = build_algebra(m, p);
  const AdmissibleFamily family = admissible_family(alg);
  bool symbolic = false;
  for (Slot s : family.slots())
    if (!params.get(s)) symbolic = true;

  if (!symbolic) {
    const auto g = admissible_metric(alg, params);
    const auto ric = ricci_nilpotent(alg, g);
    const int n = alg.dimension();
    if (o.format == Format::kCsv) {
      *o.out << "i,j,ricci\n";
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (sgn(ric.form(i, j)) != 0) *o.out << i << "," << j << "," << to_string(ric.form(i, j)) << "\n";
      return;
    }
    if (o.format == Format::kText) {
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) *o.out << (j ? " " : "") << to_string(ric.form(i, j));
        *o.out << "\n";
      }
      return;
    }
    Json rows = Json::array(), approx = Json::array();
    for (int i = 0; i < n; ++i) {
      Json row = Json::array(), arow = Json::array();
      for (int j = 0; j < n; ++j) {
        row.push_back(to_json(ric.form(i, j)));
        arow.push_back(ric.form(i, j).get_d());
      }
      rows.push_back(row);
      approx.push_back(arow);
    }
    Json j{{"m", m}, {"p", p}, {"basis", "hall"}, {"ricci", rows}};
    if (o.json.with_float) j["ricci_float"] = approx;
    o.emit(j);
    return;
  }

  // Symbolic slots: Ricci in the adapted frame with the given values substituted.
  const SymbolicRicci ric = symbolic_ricci(alg, family, params.generator_scale);
  auto fix = [&](Laurent x) {
    for (int v = 0; v < kSlotCount; ++v)
      if (params.values[v]) x = x.substitute(v, *params.values[v]);
    return x;
  };
  if (o.format != Format::kJson) {
    if (o.format == Format::kCsv) *o.out << "i,j,label_i,label_j,ricci\n";
    for (const auto& [key, value] : ric.entries) {
      const auto& vi = ric.frame.vectors[key.first];
      const auto& vj = ric.frame.vectors[key.second];
      if (o.format == Format::kCsv)
        *o.out << key.first << "," << key.second << "," << vi.label << "," << vj.label << ",\"" << fix(value).to_string()
               << "\"\n";
      else
        *o.out << "Ric(" << vi.label << ", " << vj.label << ") = " << fix(value).to_string() << "\n";
    }
    return;
  }
  Json frame = Json::array();
  for (const auto& v : ric.frame.vectors)
    frame.push_back(Json{{"label", v.label}, {"degree", v.degree}, {"content", v.content},
                         {"norm_factor", to_json(v.norm_factor)}});
  Json entries = Json::array();
  for (const auto& [key, value] : ric.entries)
    entries.push_back(Json{{"i", key.first}, {"j", key.second}, {"value", to_json(fix(value))}});
  Json traces = Json::array();
  for (const auto& bt : ric.block_traces)
    traces.push_back(Json{{"label", bt.label}, {"degree", bt.degree}, {"trace", to_json(fix(bt.trace))}});
  o.emit(Json{{"m", m}, {"p", p}, {"basis", "adapted"}, {"frame", frame}, {"entries", entries}, {"block_traces", traces}});
}

void cmd_cone(const Output& o, const std::string& type_text) {
  const EigenvalueType t = parse_eigenvalue_type(type_text);
  const auto v = cone_vector(t);
  const auto roots = root_set(t);
  const ConeCertificate cert = cone_test(t);
  if (o.format == Format::kJson) {
    Json vj = Json::array();
    for (const auto& x : v) vj.push_back(to_json(x));
    Json rj = Json::array();
    for (const auto& r : roots) {
      Json vec = Json::array();
      for (const auto& x : r.vector) vec.push_back(x.get_si());
      rj.push_back(Json{{"i", r.i + 1}, {"j", r.j + 1}, {"k", r.k + 1}, {"vector", vec}});
    }
    o.emit(Json{{"type", to_json(t)},
                {"v", vj},
                {"roots", rj},
                {"verdict", cert.feasible ? "Feasible" : "Infeasible"},
                {"certificate", to_json(cert)}});
  } else if (o.format == Format::kCsv) {
    *o.out << "verdict,witness\n" << (cert.feasible ? "Feasible" : "Infeasible") << ",\"";
    if (cert.feasible) {
      bool first = true;
      for (const auto& [key, w] : cert.weights) {
        *o.out << (first ? "" : ";") << "T" << key.first + 1 << key.second + 1 << "=" << to_string(w);
        first = false;
      }
    } else {
      for (std::size_t i = 0; i < cert.separator.size(); ++i) *o.out << (i ? ";" : "") << to_string(cert.separator[i]);
    }
    *o.out << "\"\n";
  } else {
    *o.out << (cert.feasible ? "Feasible" : "Infeasible") << "\n";
  }
}

void cmd_screen(const Output& o, int max_m, int max_p) {
  if (max_m < 2 || max_p < 3) throw DomainError("screen: need --max-m >= 2 and --max-p >= 3");
  const auto results = screen_grid(max_m, max_p);
  if (o.format == Format::kJson) {
    Json arr = Json::array();
    for (const auto& r : results) arr.push_back(to_json(r));
    o.emit(arr);
  } else {
    if (o.format == Format::kCsv) *o.out << "m,p,verdict\n";
    for (const auto& r : results) {
      if (o.format == Format::kCsv)
        *o.out << r.m << "," << r.p << "," << (r.survivor ? "Survivor" : "Screened") << "\n";
      else
        *o.out << "f(" << r.m << ", " << r.p << "): " << (r.survivor ? "Survivor" : "Screened") << "\n";
    }
  }
}

void print_outcome_text(std::ostream& out, const ClassificationOutcome& c) {
  out << "f(" << c.m << ", " << c.p << "): " << verdict_name(c.verdict) << "\n";
  if (c.solution) {
    for (int i = 0; i < kSlotCount; ++i)
      if (c.solution->slots[i])
        out << "  |" << slot_name(static_cast<Slot>(i)) << "|^2 = " << value_text(*c.solution->slots[i]) << "\n";
    out << "  C = " << value_text(c.solution->C) << "  (" << c.solution->C.to_double() << ")\n";
    out << "  C is a root of " << c.solution->c_minimal_polynomial.to_string("C") << "\n";
  }
  if (c.univariate)
    out << "  " << c.univariate->polynomial.to_string(c.univariate->variable) << " = 0 has no positive root\n";
  if (c.combination) {
    out << "  weights:";
    const Combination& comb = *c.combination;
    for (std::size_t i = 0; i < comb.weights.size(); ++i)
      out << " " << (i < comb.labels.size() ? comb.labels[i] : std::to_string(comb.weights[i].first)) << ":"
          << to_string(comb.weights[i].second);
    out << "\n  " << c.combination->lhs.to_string() << " = " << to_string(c.combination->rhs) << "*C\n";
  }
  if (c.cone && !c.cone->feasible) {
    out << "  separating vector:";
    for (const auto& x : c.cone->separator) out << " " << to_string(x);
    out << "\n";
  }
}

void cmd_solve(const Output& o, int m, int p) {
  const ClassificationOutcome c = solve_free(m, p);
  if (o.format == Format::kJson) {
    o.emit(to_json(c, o.json));
  } else if (o.format == Format::kCsv) {
    *o.out << "m,p,verdict,C\n" << m << "," << p << "," << verdict_name(c.verdict) << ","
           << (c.solution ? value_text(c.solution->C) : "") << "\n";
  } else {
    print_outcome_text(*o.out, c);
  }
}

bool cmd_classify(const Output& o, int max_m, int max_p) {
  const ClassificationReport r = classify(max_m, max_p);
  const bool ok = report_matches_classification(r);
  if (o.format == Format::kJson) {
    o.emit(to_json(r, o.json));
  } else if (o.format == Format::kCsv) {
    *o.out << "m,p,verdict,certificate\n";
    for (const auto& c : r.cases) {
      const char* cert = c.solution ? "solution" : c.univariate ? "univariate" : c.combination ? "positive-combination"
                                                                                                 : "cone";
      *o.out << c.m << "," << c.p << "," << verdict_name(c.verdict) << "," << cert << "\n";
    }
    for (const auto& g : r.gaps) *o.out << g.m << "," << g.p << ",gap,\"" << g.reason << "\"\n";
  } else {
    for (const auto& c : r.cases) *o.out << "f(" << c.m << ", " << c.p << "): " << verdict_name(c.verdict) << "\n";
    for (const auto& g : r.gaps) *o.out << "f(" << g.m << ", " << g.p << "): gap (" << g.reason << ")\n";
    *o.out << (ok ? "matches the classification" : "DOES NOT match the classification") << "\n";
  }
  return ok;
}

void cmd_extend(const Output& o, int m, int p) {
  const ClassificationOutcome c = solve_free(m, p);
  if (c.verdict != Verdict::kEinsteinNilradical)
    throw DomainError("extend: f(" + std::to_string(m) + ", " + std::to_string(p) + ") is not an Einstein nilradical");
  const ExtensionData& e = *c.extension;
  if (o.format == Format::kJson) {
    Json j{{"m", m}, {"p", p}};
    j["extension"] = to_json(c, o.json)["extension"];
    j["C"] = to_json(c.solution->C);
    o.emit(j);
  } else if (o.format == Format::kCsv) {
    *o.out << "m,p,c,c_hat,H_norm_sq,dim_g\n"
           << m << "," << p << "," << value_text(e.einstein_constant) << "," << value_text(e.c_hat) << ","
           << value_text(e.h_norm_sq) << "," << e.dimension << "\n";
  } else {
    *o.out << "dim g = " << e.dimension << "\nc = " << value_text(e.einstein_constant)
           << "\nc_hat = " << value_text(e.c_hat) << "\n|H|^2 = " << value_text(e.h_norm_sq) << "\n";
  }
}

void cmd_flow(const Output& o, int m, int p, const FlowConfig& cfg) {
  const FlowResult r = residual_minimize(m, p, cfg);
  if (o.format == Format::kJson) {
    o.emit(to_json(m, p, r));
  } else if (o.format == Format::kCsv) {
    *o.out << "m,p,C,residual,converged\n" << m << "," << p << "," << r.C << "," << r.residual << ","
           << (r.converged ? "true" : "false") << "\n";
  } else {
    *o.out << "numerical evidence only\n";
    for (const auto& [name, v] : r.params) *o.out << "  |" << name << "|^2 ~ " << v << "\n";
    *o.out << "  C ~ " << r.C << "\n  residual " << r.residual << (r.converged ? " (converged)" : "") << "\n";
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Einstein nilradical solver for free nilpotent Lie algebras"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Output output;
  output.out = &out;
  bool json = false, csv = false, text = false, verbose = false;
  auto add_format = [&](CLI::App* sub) {
    auto* j = sub->add_flag("--json", json, "JSON output (default)");
    auto* c = sub->add_flag("--csv", csv, "CSV output");
    auto* t = sub->add_flag("--text", text, "plain text output");
    j->excludes(c)->excludes(t);
    c->excludes(t);
    sub->add_flag("--float", output.json.with_float, "add floating-point approximations");
    sub->add_flag("--verbose", verbose, "report elapsed time on the error stream");
  };

  int m = 2, p = 2, max_k = 7, max_m = 5, max_p = 7;
  std::string params_path, type_text;
  FlowConfig flow;

  auto* dims = app.add_subcommand("dims", "Witt dimensions of p(m, k)");
  dims->add_option("--m", m, "generators")->required();
  dims->add_option("--max-k", max_k, "largest degree")->required();
  auto* basis = app.add_subcommand("basis", "Hall basis and structure constants of f(m, p)");
  auto* ricci = app.add_subcommand("ricci", "Ricci form of an admissible metric");
  auto* solve = app.add_subcommand("solve", "decide whether f(m, p) is an Einstein nilradical");
  auto* extend = app.add_subcommand("extend", "rank-one Einstein extension data");
  auto* flowcmd = app.add_subcommand("flow", "numerical residual minimization (evidence only)");
  for (auto* sub : {basis, ricci, solve, extend, flowcmd}) {
    sub->add_option("--m", m, "generators")->required();
    sub->add_option("--p", p, "step")->required();
  }
  ricci->add_option("--params", params_path, "JSON map of slot names to rationals or \"symbolic\"")->required();
  auto* cone = app.add_subcommand("cone", "convex-cone test for an eigenvalue type");
  cone->add_option("--type", type_text, "\"mu1,mu2,...;d1,d2,...\"")->required();
  auto* screen = app.add_subcommand("screen", "cone screening of free algebras");
  auto* classifycmd = app.add_subcommand("classify", "classification over a grid");
  for (auto* sub : {screen, classifycmd}) {
    sub->add_option("--max-m", max_m, "largest number of generators")->required();
    sub->add_option("--max-p", max_p, "largest step")->required();
  }
  flowcmd->add_option("--restarts", flow.restarts, "number of restarts");
  flowcmd->add_option("--tol", flow.tolerance, "residual tolerance");
  flowcmd->add_option("--seed", flow.seed, "random seed");
  flowcmd->add_option("--max-iter", flow.max_iterations, "iterations per restart");
  for (auto* sub : {dims, basis, ricci, cone, screen, solve, classifycmd, extend, flowcmd}) add_format(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  output.format = csv ? Format::kCsv : text ? Format::kText : Format::kJson;

  // Timing goes to the error stream only, so standard output stays reproducible.
  const auto start = std::chrono::steady_clock::now();
  struct ReportElapsed {
    bool enabled;
    std::chrono::steady_clock::time_point start;
    std::ostream& err;
    ~ReportElapsed() {
      if (!enabled) return;
      const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
      err << "elapsed " << dt.count() << " s\n";
    }
  } report{verbose, start, err};

  try {
    if (*dims) cmd_dims(output, m, max_k);
    if (*basis) cmd_basis(output, m, p);
    if (*ricci) cmd_ricci(output, m, p, params_path);
    if (*cone) cmd_cone(output, type_text);
    if (*screen) cmd_screen(output, max_m, max_p);
    if (*solve) cmd_solve(output, m, p);
    if (*classifycmd && !cmd_classify(output, max_m, max_p)) return kExitUndecided;
    if (*extend) cmd_extend(output, m, p);
    if (*flowcmd) cmd_flow(output, m, p, flow);
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << " (required dimension " << e.required_dimension() << ")\n";
    return kExitResource;
  } catch (const UndecidedError& e) {
    err << "undecided: " << e.what() << "\n";
    return kExitUndecided;
  } catch (const std::invalid_argument& e) {
    // DomainError and UnsupportedCase.
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace nilsolv
