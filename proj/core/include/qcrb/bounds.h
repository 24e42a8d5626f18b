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

// Cramer-Rao bounds built on the pseudoinverse.
//
//   simultaneous:  Tr cov >= Tr F^+
//   distributed:   Var(w^T x) >= w^T F^+ w >= (w^T Pi w)^2 / (w^T F w)
//
// The last expression is the weak bound; sqrt(F) sqrt(F)^+ is evaluated as
// the support projector Pi.

#ifndef QCRB_BOUNDS_H_
#define QCRB_BOUNDS_H_

#include <optional>
#include <string>
#include <vector>

#include "qcrb/information.h"
#include "qcrb/numerics.h"

namespace qcrb {

enum class ScenarioKind { kSimultaneous, kDistributed };

/// "simultaneous" / "distributed".
std::string to_string(ScenarioKind kind);

/// Angle (radians) below which F w and Pi w count as parallel.
inline constexpr double kSaturationAngle = 1e-8;

struct BoundReport {
  ScenarioKind scenario = ScenarioKind::kSimultaneous;
  double exact_bound = 0;
  std::optional<double> weak_bound;
  std::optional<RealSymMatrix> crb_matrix;
  std::optional<Vector> weight;
  bool estimable = true;
  std::optional<bool> saturation;
  std::optional<double> gap;  // exact - weak
  /// (I - Pi) w when the weight has a kernel component.
  std::optional<Vector> kernel_component;
  std::vector<std::string> warnings;
};

/// F^+; equals F^{-1} for invertible F.
RealSymMatrix crb_matrix(const InfoMatrix& f, const TolerancePolicy& tol);

/// Tr F^+.
double trace_bound(const InfoMatrix& f, const TolerancePolicy& tol);

/// w^T F^+ w with an estimability verdict. A weight with a kernel component
/// is reported (with a warning), not rejected. Zero weights throw InputError.
BoundReport weighted_bound(const InfoMatrix& f, const Vector& w, const TolerancePolicy& tol);

/// (w^T Pi w)^2 / (w^T F w). Throws NumericalError when w^T F w <= tau |w|^2.
double weak_bound(const InfoMatrix& f, const Vector& w, const TolerancePolicy& tol);

/// True iff F w and Pi w are parallel within kSaturationAngle.
bool saturation_check(const InfoMatrix& f, const Vector& w, const TolerancePolicy& tol);

/// Exact, weak, gap, saturation and estimability in one report. When the
/// weak bound is undefined the report carries a warning instead.
BoundReport compare_bounds(const InfoMatrix& f, const Vector& w, const TolerancePolicy& tol);

/// Angle between two nonzero vectors, accurate near 0 and pi.
double vector_angle(const Vector& a, const Vector& b);

}  // namespace qcrb

#endif  // QCRB_BOUNDS_H_
