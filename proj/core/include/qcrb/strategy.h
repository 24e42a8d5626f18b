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

// Decision flow for using the Cramer-Rao inequality with a possibly
// singular information matrix.
//
//   SE  (simultaneous estimation)
//     invertible      -> Tr F^{-1}, attainable as is
//     non-invertible  -> constraint + reduction, Tr F^+ = Tr F'^{-1}
//   DQS (distributed sensing of w^T x)
//     invertible      -> w^T F^{-1} w, attainable as is
//     w in support    -> reduction, w'^T F'^{-1} w' = w^T F^+ w
//     kernel part     -> w^T x is not estimable by any unbiased estimator
//
// Branch identifiers are stable strings (see `branch`); tooling may match on
// them. The set was reconstructed from the prose description of the flow
// and has been stable since version 0.1.

#ifndef QCRB_STRATEGY_H_
#define QCRB_STRATEGY_H_

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "qcrb/bounds.h"
#include "qcrb/information.h"
#include "qcrb/probes.h"
#include "qcrb/reduction.h"

namespace qcrb {

namespace branch {
inline constexpr std::string_view kSeInvertible = "SE/invertible";
inline constexpr std::string_view kSeNonInvertible = "SE/non-invertible";
inline constexpr std::string_view kDqsInvertible = "DQS/invertible";
inline constexpr std::string_view kDqsInSupport = "DQS/non-invertible/w-in-support";
inline constexpr std::string_view kDqsKernelComponent = "DQS/non-invertible/w-with-kernel-component";
}  // namespace branch

enum class Attainability { kAttainableAsIs, kAttainableAfterReduction, kNotEstimable };

/// "attainable_as_is", "attainable_after_reduction", "not_estimable".
std::string to_string(Attainability a);

class Scenario {
 public:
  static Scenario simultaneous() { return Scenario(ScenarioKind::kSimultaneous, std::nullopt); }
  static Scenario distributed(Vector weight) {
    return Scenario(ScenarioKind::kDistributed, std::move(weight));
  }

  ScenarioKind kind() const { return kind_; }
  const std::optional<Vector>& weight() const { return weight_; }

 private:
  Scenario(ScenarioKind kind, std::optional<Vector> weight)
      : kind_(kind), weight_(std::move(weight)) {}

  ScenarioKind kind_;
  std::optional<Vector> weight_;
};

struct StrategyReport {
  ScenarioKind scenario = ScenarioKind::kSimultaneous;
  bool invertible = false;
  int rank = 0;
  std::string branch;
  SupportDecomposition decomposition;
  std::optional<ConstraintFunction> constraint;
  std::optional<ReducedProblem> reduced;
  BoundReport bounds;
  /// Tr F'^{-1} (SE) or w'^T F'^{-1} w' (DQS) evaluated on the reduced set.
  std::optional<double> reduced_bound;
  Attainability attainability = Attainability::kAttainableAsIs;
  std::vector<std::string> notes;
};

/// Runs the decision flow for one information matrix. The constraint is
/// anchored at `anchor` (zero vector when absent). Throws InputError for a
/// distributed scenario without a weight or with a weight of wrong length.
StrategyReport classify(const InfoMatrix& f, const Scenario& sc, const TolerancePolicy& tol,
                        const std::optional<Vector>& anchor = std::nullopt);

enum class ProvenanceMode { kGeneric, kClosed, kBoth };

struct AnalysisOptions {
  ProvenanceMode provenance = ProvenanceMode::kGeneric;
  TolerancePolicy tol;
  double fd_step = 1e-5;
  /// Parameter names; defaults to x1..xd (or the model's own names).
  std::vector<std::string> param_labels;
};

/// Side-by-side check of two information matrices for the same probe.
struct ProvenanceComparison {
  std::string reference;
  std::string candidate;
  double max_abs_difference = 0;
  bool agree = false;
  double tolerance = 0;
  /// Both matrices annihilate each other's kernel basis (and ranks match).
  bool kernels_shared = false;
  double kernel_residual = 0;
  /// Uniform direction (1,...,1)/sqrt(d): whether it is an eigenvector of
  /// both matrices and the two Rayleigh quotients.
  bool uniform_is_common_eigenvector = false;
  double uniform_eigenvalue_reference = 0;
  double uniform_eigenvalue_candidate = 0;
  bool uniform_eigenvalues_match = false;
  std::string statement;
};

using ProbeSpec = std::variant<FamilySpec, ManyBodySpec>;

struct AnalysisReport {
  std::string subject;  // family or model name
  Vector x;
  InfoMatrix used;
  std::optional<InfoMatrix> generic;
  std::optional<InfoMatrix> closed_form;
  std::optional<InfoMatrix> finite_difference;
  std::vector<ProvenanceComparison> comparisons;
  /// Named scalar by-products (e.g. |grad Omega|^2 for the XY model).
  std::vector<std::pair<std::string, double>> quantities;
  StrategyReport strategy;
};

/// Compares `candidate` against `reference`; `tolerance` is relative to
/// max(1, max|reference|).
ProvenanceComparison compare_provenance(const InfoMatrix& reference, const InfoMatrix& candidate,
                                        const TolerancePolicy& tol, double tolerance);

/// Builds the information matrices a probe or model admits, cross-checks
/// them, and classifies the selected one. Disagreements are reported in
/// `comparisons`, never thrown.
AnalysisReport analyze_probe(const ProbeSpec& spec, const Vector& x, const Scenario& sc,
                             const AnalysisOptions& opts);

}  // namespace qcrb

#endif  // QCRB_STRATEGY_H_
