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

#include "qcrb/reduction.h"

#include <cmath>
#include <sstream>

#include "qcrb/error.h"

namespace qcrb {

SupportDecomposition support_decomposition(const RealSymMatrix& f, const TolerancePolicy& tol) {
  EigenDecomposition eig = eig_sym(f);
  const double tau = effective_threshold(eig, tol);
  const int d = f.dim();
  if (d > 0 && eig.eigenvalues(d - 1) < -tau) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "information matrix is not PSD: eigenvalue " << eig.eigenvalues(d - 1)
        << " below -tau = " << -tau;
    throw NumericalError(msg.str());
  }
  int rank = 0;
  while (rank < d && eig.eigenvalues(rank) > tau) ++rank;

  SupportDecomposition dec;
  dec.rank = rank;
  dec.support_basis = eig.eigenvectors.leftCols(rank);
  dec.kernel_basis = eig.eigenvectors.rightCols(d - rank);
  dec.eigenvalues = eig.eigenvalues;
  dec.policy = tol;
  dec.tolerance_used = tau;
  return dec;
}

SupportDecomposition support_decomposition(const InfoMatrix& f, const TolerancePolicy& tol) {
  return support_decomposition(f.matrix(), tol);
}

Vector ConstraintFunction::evaluate(const Vector& x) const {
  if (x.size() != kernel_basis.rows()) {
    throw InputError("constraint: x has length " + std::to_string(x.size()) + ", expected " +
                     std::to_string(kernel_basis.rows()));
  }
  return kernel_basis.transpose() * x + constant;
}

ConstraintFunction constraint_function(const SupportDecomposition& dec, const Vector& x0) {
  if (x0.size() != dec.dim()) {
    throw InputError("x0 has length " + std::to_string(x0.size()) + ", expected " +
                     std::to_string(dec.dim()));
  }
  ConstraintFunction c;
  c.kernel_basis = dec.kernel_basis;
  c.constant = -(dec.kernel_basis.transpose() * x0);
  c.anchor = x0;
  return c;
}

ReducedProblem reduce_problem(const InfoMatrix& f, const SupportDecomposition& dec,
                              const std::optional<Vector>& w) {
  if (f.dim() != dec.dim()) {
    throw InputError("reduce_problem: decomposition dimension does not match the matrix");
  }
  const Matrix& v = dec.support_basis;
  ReducedProblem out;
  Matrix reduced = v.transpose() * f.matrix().matrix() * v;
  out.reduced_fim = RealSymMatrix(0.5 * (reduced + reduced.transpose()));
  out.coefficients = v;
  Matrix pi = v * v.transpose();
  out.projector = RealSymMatrix(0.5 * (pi + pi.transpose()));
  for (int j = 0; j < dec.rank; ++j) out.reduced_labels.push_back("v" + std::to_string(j + 1) + "^T x");
  if (w) {
    if (w->size() != f.dim()) {
      throw InputError("weight has length " + std::to_string(w->size()) + ", expected " +
                       std::to_string(f.dim()));
    }
    out.projected_weight = out.projector.matrix() * *w;
    out.reduced_weight = v.transpose() * *w;
  }
  if (dec.rank > 0) {
    double smallest = eig_sym(out.reduced_fim).eigenvalues(dec.rank - 1);
    if (!(smallest > dec.tolerance_used)) {
      throw NumericalError("reduced information matrix is not invertible");
    }
  }
  return out;
}

TraceConsistency trace_consistency(const InfoMatrix& f, const TolerancePolicy& tol) {
  TraceConsistency out;
  out.trace_pinv = pseudoinverse(f.matrix(), tol).matrix().trace();
  SupportDecomposition dec = support_decomposition(f, tol);
  ReducedProblem reduced = reduce_problem(f, dec);
  out.trace_reduced_inv = cholesky_inverse(reduced.reduced_fim).matrix().trace();
  out.consistent = std::abs(out.trace_pinv - out.trace_reduced_inv) <=
                   1e-9 * std::max(1.0, std::abs(out.trace_pinv));
  return out;
}

Vector kernel_component(const SupportDecomposition& dec, const Vector& w) {
  if (w.size() != dec.dim()) {
    throw InputError("weight has length " + std::to_string(w.size()) + ", expected " +
                     std::to_string(dec.dim()));
  }
  return dec.kernel_basis * (dec.kernel_basis.transpose() * w);
}

bool is_estimable(const SupportDecomposition& dec, const Vector& w, double rel_tol) {
  return kernel_component(dec, w).norm() <= rel_tol * w.norm();
}

}  // namespace qcrb
