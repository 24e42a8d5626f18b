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

// Removing redundant parameters from a rank-deficient information matrix.
//
// The support basis V spans the estimable combinations v_j^T x; the kernel
// basis Vbar spans directions no measurement can resolve. The affine
// constraint f(x) = Vbar^T x + C pins those directions at a nominal point,
// and F' = V^T F V is the invertible information of what remains. The
// central identity is F^+ = V (V^T F V)^{-1} V^T.

#ifndef QCRB_REDUCTION_H_
#define QCRB_REDUCTION_H_

#include <optional>
#include <string>
#include <vector>

#include "qcrb/information.h"
#include "qcrb/numerics.h"

namespace qcrb {

/// Relative size of the kernel component below which a weight counts as
/// lying in the support.
inline constexpr double kEstimabilityTol = 1e-9;

struct SupportDecomposition {
  int rank = 0;
  Matrix support_basis;  // d x r
  Matrix kernel_basis;   // d x (d - r)
  Vector eigenvalues;    // descending
  TolerancePolicy policy;
  double tolerance_used = 0;  // effective threshold tau

  int dim() const { return static_cast<int>(eigenvalues.size()); }
  bool full_rank() const { return rank == dim(); }
};

/// f(x) = Vbar^T x + C, anchored so that f(anchor) = 0.
struct ConstraintFunction {
  Matrix kernel_basis;
  Vector constant;
  Vector anchor;

  bool empty() const { return kernel_basis.cols() == 0; }
  Vector evaluate(const Vector& x) const;
};

struct ReducedProblem {
  RealSymMatrix reduced_fim;                 // r x r, V^T F V
  std::vector<std::string> reduced_labels;   // "v1^T x", ...
  Matrix coefficients;                       // V, column j defines v_j^T x
  RealSymMatrix projector;                   // V V^T
  std::optional<Vector> projected_weight;    // Pi w (length d)
  std::optional<Vector> reduced_weight;      // V^T w (length r)

  int rank() const { return reduced_fim.dim(); }
  bool empty() const { return rank() == 0; }
};

/// Throws NumericalError when an eigenvalue is below -tau.
SupportDecomposition support_decomposition(const RealSymMatrix& f, const TolerancePolicy& tol);
SupportDecomposition support_decomposition(const InfoMatrix& f, const TolerancePolicy& tol);

/// C = -Vbar^T x0.
ConstraintFunction constraint_function(const SupportDecomposition& dec, const Vector& x0);

/// F' = V^T F V, Pi = V V^T and, with a weight, w' = Pi w.
ReducedProblem reduce_problem(const InfoMatrix& f, const SupportDecomposition& dec,
                              const std::optional<Vector>& w = std::nullopt);

struct TraceConsistency {
  double trace_pinv = 0;
  double trace_reduced_inv = 0;
  bool consistent = false;
};

/// Tr F^+ through the pseudoinverse, and Tr F'^{-1} through reduction plus a
/// Cholesky inverse. Consistent iff they agree within 1e-9 * max(1, Tr F^+).
TraceConsistency trace_consistency(const InfoMatrix& f, const TolerancePolicy& tol);

/// (I - Pi) w, the part of w no estimator can resolve.
Vector kernel_component(const SupportDecomposition& dec, const Vector& w);

/// |(I - Pi) w| <= rel_tol |w|.
bool is_estimable(const SupportDecomposition& dec, const Vector& w,
                  double rel_tol = kEstimabilityTol);

}  // namespace qcrb

#endif  // QCRB_REDUCTION_H_
