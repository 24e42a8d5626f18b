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

#include "report.h"

#include <iomanip>
#include <sstream>

namespace qcrb::cli {

namespace {

constexpr int kKeyWidth = 44;
constexpr int kCellWidth = 24;

template <typename T>
Json optional_json(const std::optional<T>& v) {
  if (!v) return nullptr;
  if constexpr (std::is_same_v<T, bool> || std::is_same_v<T, double>) {
    return *v;
  } else {
    return to_json(*v);
  }
}

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

// Arrays rendered on one line: scalars only, and no long prose strings.
bool is_scalar_array(const Json& j) {
  if (!j.is_array()) return false;
  for (const Json& e : j) {
    if (!is_scalar(e)) return false;
    if (e.is_string() && e.get<std::string>().size() > 24) return false;
  }
  return true;
}

// Negative zero carries no information here and only confuses diffs.
double tidy(double v) { return v == 0.0 ? 0.0 : v; }

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

std::string array_text(const Json& j) {
  std::string out = "[";
  for (size_t i = 0; i < j.size(); ++i) {
    if (i) out += ", ";
    out += scalar_text(j[i]);
  }
  return out + "]";
}

void emit(std::ostringstream& out, const std::string& key, const std::string& value) {
  out << std::left << std::setw(kKeyWidth) << key;
  if (static_cast<int>(key.size()) >= kKeyWidth) out << "  ";
  out << value << "\n";
}

void flatten(std::ostringstream& out, const std::string& prefix, const Json& j) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      flatten(out, prefix.empty() ? it.key() : prefix + "." + it.key(), it.value());
    }
  } else if (is_scalar_array(j)) {
    emit(out, prefix, array_text(j));
  } else if (j.is_array()) {
    for (size_t i = 0; i < j.size(); ++i) flatten(out, prefix + "[" + std::to_string(i) + "]", j[i]);
  } else {
    emit(out, prefix, scalar_text(j));
  }
}

void discrepancy_table(std::ostringstream& out, const Json& comparisons) {
  static const char* kColumns[] = {"reference", "candidate", "max_abs_difference",
                                   "agree", "kernels_shared", "uniform_eigenvalue_reference",
                                   "uniform_eigenvalue_candidate"};
  static const char* kHeaders[] = {"reference", "candidate", "max|diff|", "agree",
                                   "kernel shared", "uniform eig (ref)", "uniform eig (cand)"};
  out << "\ndiscrepancy table\n";
  for (const char* h : kHeaders) out << std::left << std::setw(kCellWidth) << h;
  out << "\n";
  for (const Json& c : comparisons) {
    for (const char* key : kColumns) {
      out << std::left << std::setw(kCellWidth) << scalar_text(c.at(key));
    }
    out << "\n";
  }
  for (const Json& c : comparisons) out << "  " << scalar_text(c.at("statement")) << "\n";
}

}  // namespace

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(tidy(v(i)));
  return out;
}

Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(tidy(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Json to_json(const RealSymMatrix& m) { return to_json(m.matrix()); }

Json columns_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(to_json(Vector(m.col(c))));
  return out;
}

Json to_json(const InfoMatrix& f) {
  Json out;
  out["provenance"] = to_string(f.provenance());
  out["context"] = f.context();
  out["labels"] = f.param_labels();
  out["matrix"] = to_json(f.matrix());
  return out;
}

Json to_json(const SupportDecomposition& dec) {
  Json out;
  out["dim"] = dec.dim();
  out["rank"] = dec.rank;
  out["eigenvalues"] = to_json(dec.eigenvalues);
  out["tolerance_used"] = dec.tolerance_used;
  out["support_basis"] = columns_json(dec.support_basis);
  out["kernel_basis"] = columns_json(dec.kernel_basis);
  return out;
}

Json to_json(const ConstraintFunction& c) {
  Json out;
  out["kernel_basis"] = columns_json(c.kernel_basis);
  out["constant"] = to_json(c.constant);
  out["anchor"] = to_json(c.anchor);
  return out;
}

Json to_json(const ReducedProblem& r) {
  Json out;
  out["rank"] = r.rank();
  out["labels"] = r.reduced_labels;
  out["coefficients"] = columns_json(r.coefficients);
  out["reduced_fim"] = to_json(r.reduced_fim);
  out["projector"] = to_json(r.projector);
  out["projected_weight"] = optional_json(r.projected_weight);
  out["reduced_weight"] = optional_json(r.reduced_weight);
  return out;
}

Json to_json(const TraceConsistency& t) {
  Json out;
  out["trace_pinv"] = t.trace_pinv;
  out["trace_reduced_inv"] = t.trace_reduced_inv;
  out["consistent"] = t.consistent;
  return out;
}

Json to_json(const BoundReport& b) {
  Json out;
  out["scenario"] = to_string(b.scenario);
  out["exact_bound"] = b.exact_bound;
  out["weak_bound"] = optional_json(b.weak_bound);
  out["gap"] = optional_json(b.gap);
  out["saturation"] = optional_json(b.saturation);
  out["estimable"] = b.estimable;
  out["weight"] = optional_json(b.weight);
  out["kernel_component"] = optional_json(b.kernel_component);
  out["crb_matrix"] = optional_json(b.crb_matrix);
  out["warnings"] = b.warnings;
  return out;
}

Json to_json(const StrategyReport& s) {
  Json out;
  out["scenario"] = to_string(s.scenario);
  out["branch"] = s.branch;
  out["invertible"] = s.invertible;
  out["rank"] = s.rank;
  out["attainability"] = to_string(s.attainability);
  out["decomposition"] = to_json(s.decomposition);
  out["constraint"] = optional_json(s.constraint);
  out["reduced"] = optional_json(s.reduced);
  out["bounds"] = to_json(s.bounds);
  out["reduced_bound"] = optional_json(s.reduced_bound);
  out["notes"] = s.notes;
  return out;
}

Json to_json(const ProvenanceComparison& c) {
  Json out;
  out["reference"] = c.reference;
  out["candidate"] = c.candidate;
  out["max_abs_difference"] = c.max_abs_difference;
  out["tolerance"] = c.tolerance;
  out["agree"] = c.agree;
  out["kernels_shared"] = c.kernels_shared;
  out["kernel_residual"] = c.kernel_residual;
  out["uniform_is_common_eigenvector"] = c.uniform_is_common_eigenvector;
  out["uniform_eigenvalue_reference"] = c.uniform_eigenvalue_reference;
  out["uniform_eigenvalue_candidate"] = c.uniform_eigenvalue_candidate;
  out["uniform_eigenvalues_match"] = c.uniform_eigenvalues_match;
  out["statement"] = c.statement;
  return out;
}

Json to_json(const EstimationRun& run) {
  Json out;
  out["n_repetitions"] = run.n_repetitions;
  out["n_shots"] = run.n_shots;
  out["seed"] = run.seed;
  out["reduced"] = to_json(run.reduced);
  out["classical_fim"] = to_json(run.classical_fim);
  out["theta_true"] = to_json(run.theta_true);
  out["bound"] = to_json(run.bound);
  out["empirical_cov"] = to_json(run.empirical_cov);
  out["mean"] = to_json(run.mean);
  out["variance_ratio"] = to_json(run.variance_ratio);
  out["diagonal_z"] = to_json(run.diagonal_z);
  out["min_excess_eigenvalue"] = run.min_excess_eigenvalue;
  out["covariance_standard_error"] = run.covariance_standard_error;
  out["cri_respected"] = run.cri_respected;
  Json estimates = Json::array();
  for (const Vector& e : run.estimates) estimates.push_back(to_json(e));
  out["estimates"] = std::move(estimates);
  return out;
}

Json tolerance_json(const TolerancePolicy& tol, int dim, std::optional<double> threshold) {
  Json out;
  out["mode"] = tol.mode == TolerancePolicy::Mode::kRelative ? "relative" : "absolute";
  out["value"] = tol.resolved_value(dim);
  out["explicit"] = tol.value.has_value();
  out["threshold"] = optional_json(threshold);
  return out;
}

std::string dump_json(const Json& report) { return report.dump(2) + "\n"; }

std::string render_text(const Json& report) {
  std::ostringstream out;
  flatten(out, "", report);
  if (auto it = report.find("comparisons"); it != report.end() && it->is_array() && !it->empty()) {
    discrepancy_table(out, *it);
  }
  return out.str();
}

}  // namespace qcrb::cli
