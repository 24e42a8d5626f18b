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

#include "qcrb/strategy.h"

#include <cmath>
#include <sstream>

#include "overloaded.h"
#include "qcrb/error.h"

namespace qcrb {

namespace {

using internal::Overloaded;

constexpr double kClosedFormAgreement = 1e-10;
constexpr double kFiniteDifferenceAgreement = 1e-7;
constexpr double kSharedStructureTol = 1e-10;
constexpr double kZeroCombinationTol = 1e-12;

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

double reduced_trace(const ReducedProblem& reduced) {
  if (reduced.empty()) return 0.0;
  return cholesky_inverse(reduced.reduced_fim).matrix().trace();
}

double reduced_weighted(const ReducedProblem& reduced) {
  if (reduced.empty()) return 0.0;
  const Vector& rw = *reduced.reduced_weight;
  return rw.dot(cholesky_inverse(reduced.reduced_fim).matrix() * rw);
}

}  // namespace

std::string to_string(Attainability a) {
  switch (a) {
    case Attainability::kAttainableAsIs:
      return "attainable_as_is";
    case Attainability::kAttainableAfterReduction:
      return "attainable_after_reduction";
    case Attainability::kNotEstimable:
      return "not_estimable";
  }
  return "unknown";
}

StrategyReport classify(const InfoMatrix& f, const Scenario& sc, const TolerancePolicy& tol,
                        const std::optional<Vector>& anchor) {
  const int d = f.dim();
  if (d < 1) throw InputError("information matrix must have at least one parameter");
  Vector x0 = anchor ? *anchor : Vector::Zero(d);
  if (x0.size() != d) {
    throw InputError("anchor has length " + std::to_string(x0.size()) + ", expected " +
                     std::to_string(d));
  }
  if (sc.kind() == ScenarioKind::kDistributed) {
    if (!sc.weight()) throw InputError("weight: distributed scenario requires a weight vector");
    if (sc.weight()->size() != d) {
      throw InputError("weight has length " + std::to_string(sc.weight()->size()) +
                       ", expected " + std::to_string(d));
    }
  }

  StrategyReport r;
  r.scenario = sc.kind();
  r.decomposition = support_decomposition(f, tol);
  r.rank = r.decomposition.rank;
  r.invertible = r.decomposition.full_rank();

  if (!r.invertible) {
    r.constraint = constraint_function(r.decomposition, x0);
    r.reduced = reduce_problem(f, r.decomposition, sc.weight());
    if (r.rank == 0) r.notes.push_back("no estimable parameter: the information matrix is zero");
  }

  if (sc.kind() == ScenarioKind::kSimultaneous) {
    r.bounds.scenario = ScenarioKind::kSimultaneous;
    r.bounds.crb_matrix = crb_matrix(f, tol);
    r.bounds.exact_bound = r.bounds.crb_matrix->matrix().trace();
    if (r.invertible) {
      r.branch = branch::kSeInvertible;
      r.attainability = Attainability::kAttainableAsIs;
    } else {
      r.branch = branch::kSeNonInvertible;
      r.attainability = Attainability::kAttainableAfterReduction;
      r.reduced_bound = reduced_trace(*r.reduced);
      r.notes.push_back("simultaneous estimation of all " + std::to_string(d) +
                        " parameters is impossible; estimate the " + std::to_string(r.rank) +
                        " reduced parameters v_j^T x instead");
      r.notes.push_back("Tr F^+ = " + fmt(r.bounds.exact_bound) +
                        ", Tr F'^-1 = " + fmt(*r.reduced_bound));
    }
    return r;
  }

  const Vector& w = *sc.weight();
  r.bounds = compare_bounds(f, w, tol);
  if (r.invertible) {
    r.branch = branch::kDqsInvertible;
    r.attainability = Attainability::kAttainableAsIs;
  } else if (r.bounds.estimable) {
    r.branch = branch::kDqsInSupport;
    r.attainability = Attainability::kAttainableAfterReduction;
    r.reduced_bound = reduced_weighted(*r.reduced);
    r.notes.push_back("w^T F^+ w = " + fmt(r.bounds.exact_bound) +
                      ", w'^T F'^-1 w' = " + fmt(*r.reduced_bound));
  } else {
    r.branch = branch::kDqsKernelComponent;
    r.attainability = Attainability::kNotEstimable;
    r.notes.push_back("w^T x cannot be estimated with finite variance by any unbiased estimator; "
                      "kernel component norm " + fmt(r.bounds.kernel_component->norm()));
  }
  return r;
}

ProvenanceComparison compare_provenance(const InfoMatrix& reference, const InfoMatrix& candidate,
                                        const TolerancePolicy& tol, double tolerance) {
  if (reference.dim() != candidate.dim()) {
    throw InputError("compare_provenance: matrices have different dimensions");
  }
  const Matrix& a = reference.matrix().matrix();
  const Matrix& b = candidate.matrix().matrix();
  const int d = reference.dim();
  ProvenanceComparison c;
  c.reference = to_string(reference.provenance());
  c.candidate = to_string(candidate.provenance());
  c.tolerance = tolerance;
  c.max_abs_difference = max_abs(a - b);
  double scale = std::max(1.0, max_abs(a));
  c.agree = c.max_abs_difference <= tolerance * scale;

  SupportDecomposition da = support_decomposition(reference, tol);
  SupportDecomposition db = support_decomposition(candidate, tol);
  double residual = 0;
  if (da.kernel_basis.cols() > 0) residual = std::max(residual, max_abs(b * da.kernel_basis));
  if (db.kernel_basis.cols() > 0) residual = std::max(residual, max_abs(a * db.kernel_basis));
  c.kernel_residual = residual;
  c.kernels_shared = da.rank == db.rank && residual <= kSharedStructureTol * scale;

  Vector u = Vector::Constant(d, 1.0 / std::sqrt(static_cast<double>(d)));
  c.uniform_eigenvalue_reference = u.dot(a * u);
  c.uniform_eigenvalue_candidate = u.dot(b * u);
  double ra = (a * u - c.uniform_eigenvalue_reference * u).norm();
  double rb = (b * u - c.uniform_eigenvalue_candidate * u).norm();
  c.uniform_is_common_eigenvector = ra <= kSharedStructureTol * scale && rb <= kSharedStructureTol * scale;
  c.uniform_eigenvalues_match =
      std::abs(c.uniform_eigenvalue_reference - c.uniform_eigenvalue_candidate) <=
      kSharedStructureTol * scale;

  std::ostringstream s;
  s.precision(17);
  if (c.agree) {
    s << c.candidate << " agrees with " << c.reference << " (max |difference| "
      << c.max_abs_difference << ")";
  } else {
    s << c.candidate << " DIFFERS from " << c.reference << ": max |difference| "
      << c.max_abs_difference;
    s << (c.kernels_shared ? "; they share the same kernel (rank " + std::to_string(da.rank) + ")"
                           : "; their kernels differ");
    if (c.uniform_is_common_eigenvector) {
      s << "; the uniform direction is an eigenvector of both with eigenvalues "
        << c.uniform_eigenvalue_reference << " and " << c.uniform_eigenvalue_candidate
        << (c.uniform_eigenvalues_match ? " (equal)" : " (different)");
    }
    s << "; they differ elsewhere";
  }
  c.statement = s.str();
  return c;
}

AnalysisReport analyze_probe(const ProbeSpec& spec, const Vector& x, const Scenario& sc,
                             const AnalysisOptions& opts) {
  return std::visit(
      Overloaded{
          [&](const FamilySpec& family) {
            LinearPhaseState state = build_family(family);
            const int d = state.n_params();
            Vector point = x.size() == 0 ? Vector::Zero(d) : x;
            std::vector<std::string> labels =
                opts.param_labels.empty() ? default_param_labels(d) : opts.param_labels;
            if (static_cast<int>(labels.size()) != d) {
              throw InputError("labels: " + std::to_string(labels.size()) + " labels for " +
                               std::to_string(d) + " parameters");
            }

            InfoMatrix generic = qfim(state, point).with_labels(labels);
            InfoMatrix fd = qfim_fd_oracle(state, point, opts.fd_step).with_labels(labels);
            std::optional<InfoMatrix> closed;
            const bool has_closed = !std::holds_alternative<CustomState>(family);
            if (has_closed) closed = closed_form_qfim(family).with_labels(labels);
            if (opts.provenance == ProvenanceMode::kClosed && !has_closed) {
              throw InputError("provenance closed: family custom has no closed form");
            }

            const bool use_closed = opts.provenance == ProvenanceMode::kClosed;
            AnalysisReport out{family_name(family), point, use_closed ? *closed : generic,
                               generic, closed, fd, {}, {}, {}};
            out.comparisons.push_back(
                compare_provenance(generic, fd, opts.tol, kFiniteDifferenceAgreement));
            if (closed) {
              out.comparisons.push_back(
                  compare_provenance(generic, *closed, opts.tol, kClosedFormAgreement));
            }
            out.strategy = classify(out.used, sc, opts.tol, point);
            out.strategy.notes.push_back("information matrix: " + to_string(out.used.provenance()));
            if (closed && opts.provenance == ProvenanceMode::kGeneric) {
              out.strategy.notes.push_back("closed form available; request provenance both to compare");
            }
            for (const ProvenanceComparison& c : out.comparisons) {
              if (!c.agree) out.strategy.notes.push_back("discrepancy: " + c.statement);
            }
            return out;
          },
          [&](const ManyBodySpec& model) {
            InfoMatrix closed = many_body_qfim(model);
            if (!opts.param_labels.empty()) closed = closed.with_labels(opts.param_labels);
            Vector point = model_point(model);
            AnalysisReport out{model_name(model), point, closed, std::nullopt, closed,
                               std::nullopt, {}, {}, {}};
            out.strategy = classify(closed, sc, opts.tol, point);
            out.strategy.notes.push_back("information matrix: closed_form");
            if (opts.provenance != ProvenanceMode::kClosed) {
              out.strategy.notes.push_back(
                  "generic engine not applicable to many-body models; closed form used");
            }
            const Matrix& v = out.strategy.decomposition.support_basis;
            for (int j = 0; j < v.cols(); ++j) {
              double value = v.col(j).dot(point);
              std::string name = "v" + std::to_string(j + 1) + "^T x at nominal point";
              out.quantities.emplace_back(name, value);
              if (std::abs(value) <= kZeroCombinationTol * std::max(1.0, point.norm())) {
                out.strategy.notes.push_back(
                    "estimable combination v" + std::to_string(j + 1) +
                    "^T x evaluates to 0 at the nominal point; it carries no information about "
                    "the parameter values when all are unknown");
              }
            }
            if (const auto* xy = std::get_if<XyThreeSite>(&model)) {
              Vector grad = xy_omega_gradient(*xy);
              out.quantities.emplace_back("|grad Omega|^2", grad.squaredNorm());
              out.strategy.notes.push_back(
                  "F_Omega = F' / |grad Omega|^2 for the effective parameter Omega = "
                  "lambda gamma / (2h + lambda)");
            }
            return out;
          },
      },
      spec);
}

}  // namespace qcrb
