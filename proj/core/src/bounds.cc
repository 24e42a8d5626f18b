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

#include "qcrb/bounds.h"

#include <cmath>
#include <sstream>

#include "qcrb/error.h"
#include "qcrb/reduction.h"

namespace qcrb {

namespace {

void check_weight(const InfoMatrix& f, const Vector& w) {
  if (w.size() != f.dim()) {
    throw InputError("weight has length " + std::to_string(w.size()) + ", expected " +
                     std::to_string(f.dim()));
  }
  if (!w.allFinite()) throw InputError("weight has non-finite entries");
  if (w.norm() == 0.0) throw InputError("weight vector must be nonzero");
}

// w^T F w and the threshold it must clear for the weak bound to exist.
double checked_curvature(const InfoMatrix& f, const Vector& w, double tau) {
  double wfw = w.dot(f.matrix().matrix() * w);
  if (!(wfw > tau * w.squaredNorm())) {
    throw NumericalError("weight entirely in kernel; weak bound undefined (w^T F w = " +
                         std::to_string(wfw) + ")");
  }
  return wfw;
}

}  // namespace

std::string to_string(ScenarioKind kind) {
  return kind == ScenarioKind::kSimultaneous ? "simultaneous" : "distributed";
}

double vector_angle(const Vector& a, const Vector& b) {
  Vector ua = a.normalized(), ub = b.normalized();
  return 2.0 * std::atan2((ua - ub).norm(), (ua + ub).norm());
}

RealSymMatrix crb_matrix(const InfoMatrix& f, const TolerancePolicy& tol) {
  return pseudoinverse(f.matrix(), tol);
}

double trace_bound(const InfoMatrix& f, const TolerancePolicy& tol) {
  return crb_matrix(f, tol).matrix().trace();
}

BoundReport weighted_bound(const InfoMatrix& f, const Vector& w, const TolerancePolicy& tol) {
  check_weight(f, w);
  SupportDecomposition dec = support_decomposition(f, tol);
  RealSymMatrix pinv = crb_matrix(f, tol);
  BoundReport out;
  out.scenario = ScenarioKind::kDistributed;
  out.weight = w;
  out.exact_bound = w.dot(pinv.matrix() * w);
  out.estimable = is_estimable(dec, w);
  if (!out.estimable) {
    out.kernel_component = kernel_component(dec, w);
    std::ostringstream msg;
    msg.precision(17);
    msg << "weight has a kernel component of norm " << out.kernel_component->norm()
        << "; no unbiased estimator exists for w^T x, and w^T F^+ w only bounds its "
           "projection onto the support";
    out.warnings.push_back(msg.str());
  }
  return out;
}

double weak_bound(const InfoMatrix& f, const Vector& w, const TolerancePolicy& tol) {
  check_weight(f, w);
  SupportDecomposition dec = support_decomposition(f, tol);
  double wfw = checked_curvature(f, w, dec.tolerance_used);
  Vector vw = dec.support_basis.transpose() * w;
  double wpw = vw.squaredNorm();  // w^T V V^T w
  return wpw * wpw / wfw;
}

bool saturation_check(const InfoMatrix& f, const Vector& w, const TolerancePolicy& tol) {
  check_weight(f, w);
  SupportDecomposition dec = support_decomposition(f, tol);
  checked_curvature(f, w, dec.tolerance_used);
  Vector fw = f.matrix().matrix() * w;
  Vector pw = dec.support_basis * (dec.support_basis.transpose() * w);
  return vector_angle(fw, pw) < kSaturationAngle;
}

BoundReport compare_bounds(const InfoMatrix& f, const Vector& w, const TolerancePolicy& tol) {
  BoundReport out = weighted_bound(f, w, tol);
  try {
    out.weak_bound = weak_bound(f, w, tol);
    out.saturation = saturation_check(f, w, tol);
    out.gap = out.exact_bound - *out.weak_bound;
  } catch (const NumericalError& e) {
    out.warnings.push_back(e.what());
  }
  return out;
}

}  // namespace qcrb
