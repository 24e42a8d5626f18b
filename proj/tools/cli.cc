// Copyright 2026 The qcrb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <algorithm>
#include <charconv>
#include <cstdlib>

#include "CLI11.hpp"
#include "documents.h"
#include "qcrb/error.h"
#include "report.h"

#ifndef QCRB_VERSION_STRING
#define QCRB_VERSION_STRING "unknown"
#endif

namespace qcrb::cli {

namespace {

struct Options {
  std::string probe;
  std::string povm;
  std::string format = "json";
  std::string tol;
  std::string x;
  std::string weight;
  std::string scenario = "se";
  std::string provenance = "generic";
  std::int64_t shots = 10000;
  int reps = 500;
  std::uint64_t seed = 1;
};

// A probe document together with everything resolved from the flags.
struct Inputs {
  ProbeDocument doc;
  std::optional<Vector> x;
  std::optional<Vector> weight;
  TolerancePolicy tol;
};

double parse_positive(const std::string& text, const std::string& what) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v) || v <= 0) {
    throw InputError(what + ": `" + text + "` is not a positive decimal");
  }
  return v;
}

std::optional<Vector> resolve_vector(const std::optional<Vector>& from_file, const std::string& flag,
                                     const std::string& name, std::ostream& err) {
  std::optional<Vector> from_flag;
  if (!flag.empty()) from_flag = parse_decimal_list(flag, "--" + name);
  if (from_file && from_flag) {
    err << "warning: `" << name << "` in the probe file overrides --" << name << "\n";
  }
  return from_file ? from_file : from_flag;
}

ProvenanceMode parse_provenance(const std::string& s) {
  if (s == "closed") return ProvenanceMode::kClosed;
  if (s == "both") return ProvenanceMode::kBoth;
  return ProvenanceMode::kGeneric;
}

Inputs load_inputs(const Options& o, const EnvLookup& env, std::ostream& err) {
  Inputs in;
  in.doc = parse_probe_document(read_json_file(o.probe));
  in.x = resolve_vector(in.doc.x, o.x, "x", err);
  in.weight = resolve_vector(in.doc.weight, o.weight, "weight", err);
  if (!o.tol.empty()) {
    in.tol = parse_tolerance(o.tol);
  } else if (auto e = env("CRB_TOL"); e && !e->empty()) {
    try {
      in.tol = parse_tolerance(*e);
    } catch (const InputError& ex) {
      throw InputError(std::string("CRB_TOL: ") + ex.what());
    }
  }
  if (std::holds_alternative<ManyBodySpec>(in.doc.spec) && in.x) {
    err << "warning: many-body models are evaluated at their own parameters; x is ignored\n";
  }
  return in;
}

Json header(const std::string& command) {
  Json j;
  j["tool"] = "qcrb";
  j["version"] = QCRB_VERSION_STRING;
  j["command"] = command;
  return j;
}

AnalysisReport analysis(const Inputs& in, const Options& o, const Scenario& sc) {
  AnalysisOptions opts;
  opts.provenance = parse_provenance(o.provenance);
  opts.tol = in.tol;
  opts.param_labels = in.doc.labels;
  return analyze_probe(in.doc.spec, in.x.value_or(Vector()), sc, opts);
}

void add_subject(Json& j, const AnalysisReport& a, const Options& o, const Inputs& in) {
  j["tolerance"] = tolerance_json(in.tol, a.used.dim(), a.strategy.decomposition.tolerance_used);
  j["subject"] = a.subject;
  j["x"] = to_json(a.x);
  j["provenance_mode"] = o.provenance;
  j["information_matrix"] = to_json(a.used);
  if (parse_provenance(o.provenance) == ProvenanceMode::kBoth) {
    j["generic"] = a.generic ? to_json(*a.generic) : Json(nullptr);
    j["closed_form"] = a.closed_form ? to_json(*a.closed_form) : Json(nullptr);
    j["finite_difference"] = a.finite_difference ? to_json(*a.finite_difference) : Json(nullptr);
    Json comps = Json::array();
    for (const ProvenanceComparison& c : a.comparisons) comps.push_back(to_json(c));
    j["comparisons"] = std::move(comps);
  }
}

Json cmd_qfim(const Options& o, const Inputs& in) {
  AnalysisReport a = analysis(in, o, Scenario::simultaneous());
  Json j = header("qfim");
  add_subject(j, a, o, in);
  return j;
}

Json cmd_analyze(const Options& o, const Inputs& in) {
  Scenario sc = Scenario::simultaneous();
  if (o.scenario == "dqs") {
    if (!in.weight) throw InputError("--weight: the dqs scenario requires a weight vector");
    sc = Scenario::distributed(*in.weight);
  }
  AnalysisReport a = analysis(in, o, sc);
  Json j = header("analyze");
  add_subject(j, a, o, in);
  Json q = Json::object();
  for (const auto& [name, value] : a.quantities) q[name] = value;
  j["quantities"] = std::move(q);
  j["strategy"] = to_json(a.strategy);
  return j;
}

Json cmd_bounds(const Options& o, const Inputs& in) {
  if (!in.weight) throw InputError("--weight: bounds requires a weight vector");
  AnalysisReport a = analysis(in, o, Scenario::simultaneous());
  Json j = header("bounds");
  add_subject(j, a, o, in);
  j["bounds"] = to_json(compare_bounds(a.used, *in.weight, in.tol));
  return j;
}

Json cmd_reduce(const Options& o, const Inputs& in) {
  AnalysisReport a = analysis(in, o, Scenario::simultaneous());
  if (in.weight && in.weight->size() != a.used.dim()) {
    throw InputError("weight has length " + std::to_string(in.weight->size()) + ", expected " +
                     std::to_string(a.used.dim()));
  }
  const SupportDecomposition& dec = a.strategy.decomposition;
  Json j = header("reduce");
  add_subject(j, a, o, in);
  j["decomposition"] = to_json(dec);
  j["constraint"] = to_json(constraint_function(dec, a.x));
  j["reduced"] = to_json(reduce_problem(a.used, dec, in.weight));
  j["trace_consistency"] = to_json(trace_consistency(a.used, in.tol));
  return j;
}

Json cmd_simulate(const Options& o, const Inputs& in) {
  const auto* family = std::get_if<FamilySpec>(&in.doc.spec);
  if (!family) throw InputError("simulate: many-body models have no state to sample from");
  LinearPhaseState state = build_family(*family);
  Povm povm = parse_povm_document(read_json_file(o.povm));
  Vector x = in.x.value_or(Vector::Zero(state.n_params()));
  EstimationRun run = attainability_study(state, povm, x, o.shots, o.reps, o.seed, in.tol);
  Json j = header("simulate");
  j["tolerance"] = tolerance_json(in.tol, state.n_params(), std::nullopt);
  j["subject"] = family_name(*family);
  j["x"] = to_json(x);
  j["povm_outcomes"] = povm.size();
  j["run"] = to_json(run);
  return j;
}

Json cmd_families() {
  struct Entry {
    const char* name;
    const char* parameters;
    const char* closed_form;
    const char* invertible;
  };
  static const Entry kEntries[] = {
      {"ghz_like", "nu: real array", "nu nu^T", "never (rank 1)"},
      {"noon_like", "nu: real array, nonzero entries", "4((m+1)diag(nu^2) - nu nu^T)/(m+1)^2",
       "always"},
      {"cyclic_paired", "m: integer >= 2", "circulant, diagonal 2/m, neighbours 1/m",
       "iff m is odd"},
      {"custom", "kets: [{label, re, im, encoding}]", "none (generic engine only)", "depends"},
      {"transverse_ising", "omega, g: real; n_sites: even integer >= 2",
       "rank-1 lattice sum over k = pi(2n+1)/N", "never (kernel along (omega, g))"},
      {"xy_three_site", "lambda, gamma, h: real", "rank-1 three-site formula",
       "never (one effective parameter)"},
  };
  Json j = header("families");
  Json list = Json::array();
  for (const Entry& e : kEntries) {
    Json f;
    f["name"] = e.name;
    f["parameters"] = e.parameters;
    f["closed_form"] = e.closed_form;
    f["invertible"] = e.invertible;
    list.push_back(std::move(f));
  }
  j["families"] = std::move(list);
  return j;
}

void add_common(CLI::App* sub, Options& o, bool needs_probe) {
  if (needs_probe) {
    sub->add_option("--probe", o.probe, "Probe document (JSON)")->required();
    sub->add_option("--tol", o.tol, "Eigenvalue tolerance: 1e-9, rel:1e-9 or abs:1e-9");
    sub->add_option("--x", o.x, "Parameter point, comma-separated");
    sub->add_option("--provenance", o.provenance, "Information matrix source")
        ->check(CLI::IsMember({"generic", "closed", "both"}));
  }
  sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
}

}  // namespace

EnvLookup process_env() {
  return [](const std::string& name) -> std::optional<std::string> {
    const char* v = std::getenv(name.c_str());
    if (!v) return std::nullopt;
    return std::string(v);
  };
}

TolerancePolicy parse_tolerance(const std::string& text) {
  if (text.rfind("abs:", 0) == 0) return TolerancePolicy::absolute(parse_positive(text.substr(4), "tol"));
  if (text.rfind("rel:", 0) == 0) return TolerancePolicy::relative(parse_positive(text.substr(4), "tol"));
  return TolerancePolicy::relative(parse_positive(text, "tol"));
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const EnvLookup& env) {
  Options o;
  CLI::App app{"Fisher information diagnostics for multi-parameter estimation", "qcrb"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", QCRB_VERSION_STRING);

  CLI::App* qfim_cmd = app.add_subcommand("qfim", "Print the information matrix of a probe");
  add_common(qfim_cmd, o, true);

  CLI::App* analyze_cmd = app.add_subcommand("analyze", "Classify the estimation problem");
  add_common(analyze_cmd, o, true);
  analyze_cmd->add_option("--scenario", o.scenario, "se or dqs")
      ->check(CLI::IsMember({"se", "dqs"}));
  analyze_cmd->add_option("--weight", o.weight, "Weight vector, comma-separated");

  CLI::App* bounds_cmd = app.add_subcommand("bounds", "Compare exact and weak weighted bounds");
  add_common(bounds_cmd, o, true);
  bounds_cmd->add_option("--weight", o.weight, "Weight vector, comma-separated");

  CLI::App* reduce_cmd = app.add_subcommand("reduce", "Constraint function and reduced problem");
  add_common(reduce_cmd, o, true);
  reduce_cmd->add_option("--weight", o.weight, "Weight vector, comma-separated");

  CLI::App* simulate_cmd = app.add_subcommand("simulate", "Monte-Carlo maximum likelihood study");
  add_common(simulate_cmd, o, true);
  simulate_cmd->add_option("--povm", o.povm, "POVM document (JSON)")->required();
  simulate_cmd->add_option("--shots", o.shots, "Shots per repetition")->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--reps", o.reps, "Repetitions")->check(CLI::Range(2, 1 << 30));
  simulate_cmd->add_option("--seed", o.seed, "Random seed");

  CLI::App* families_cmd = app.add_subcommand("families", "List built-in probe families");
  add_common(families_cmd, o, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << QCRB_VERSION_STRING << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitInput;
  }

  try {
    Json report;
    if (families_cmd->parsed()) {
      report = cmd_families();
    } else {
      Inputs in = load_inputs(o, env, err);
      if (qfim_cmd->parsed()) report = cmd_qfim(o, in);
      if (analyze_cmd->parsed()) report = cmd_analyze(o, in);
      if (bounds_cmd->parsed()) report = cmd_bounds(o, in);
      if (reduce_cmd->parsed()) report = cmd_reduce(o, in);
      if (simulate_cmd->parsed()) report = cmd_simulate(o, in);
    }
    out << (o.format == "text" ? render_text(report) : dump_json(report));
    return kExitOk;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace qcrb::cli
