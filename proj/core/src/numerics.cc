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

#include "qcrb/numerics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "qcrb/error.h"

namespace qcrb {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kMachineEps = 2.2e-16;
constexpr double kDefaultEpsMultiple = 64.0;
// Entries below this magnitude are skipped when looking for the leading
// nonzero entry of a unit eigenvector.
constexpr double kLeadingEntryEps = 1e-12;
// Relative spacing under which consecutive eigenvalues count as tied.
constexpr double kTieTol = 1e-12;

void normalize_sign(Eigen::Ref<Vector> v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > kLeadingEntryEps) {
      if (v(i) < 0) v = -v;
      return;
    }
  }
}

bool lexicographically_greater(const Vector& a, const Vector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) != b(i)) return a(i) > b(i);
  }
  return false;
}

EigenDecomposition checked_psd_eig(const RealSymMatrix& m, const TolerancePolicy& tol,
                                   double* tau) {
  EigenDecomposition eig = eig_sym(m);
  *tau = effective_threshold(eig, tol);
  if (eig.eigenvalues.size() > 0) {
    double smallest = eig.eigenvalues(eig.eigenvalues.size() - 1);
    if (smallest < -*tau) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "matrix is not PSD: eigenvalue " << smallest << " below -tau = " << -*tau;
      throw NumericalError(msg.str());
    }
  }
  return eig;
}

}  // namespace

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

RealSymMatrix::RealSymMatrix(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw NumericalError("matrix is not square: " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  }
  if (!m.allFinite()) throw NumericalError("matrix has non-finite entries");
  double scale = std::max(1.0, max_abs(m));
  double asym = max_abs(m - m.transpose());
  if (asym > kSymmetryTol * scale) {
    std::ostringstream msg;
    msg << "matrix is not symmetric: max |M - M^T| = " << asym;
    throw NumericalError(msg.str());
  }
  m_ = 0.5 * (m + m.transpose());
}

RealSymMatrix RealSymMatrix::zero(int dim) { return RealSymMatrix(Matrix::Zero(dim, dim)); }

RealSymMatrix RealSymMatrix::identity(int dim) {
  return RealSymMatrix(Matrix::Identity(dim, dim));
}

TolerancePolicy TolerancePolicy::relative(double v) {
  if (!(v >= 0) || !std::isfinite(v)) throw InputError("tolerance must be a finite nonnegative value");
  return {Mode::kRelative, v};
}

TolerancePolicy TolerancePolicy::absolute(double v) {
  if (!(v >= 0) || !std::isfinite(v)) throw InputError("tolerance must be a finite nonnegative value");
  return {Mode::kAbsolute, v};
}

double TolerancePolicy::resolved_value(int dim) const {
  if (value) return *value;
  return std::max(dim, 1) * kMachineEps * kDefaultEpsMultiple;
}

double TolerancePolicy::threshold(int dim, double lambda_max) const {
  double v = resolved_value(dim);
  return mode == Mode::kRelative ? v * lambda_max : v;
}

std::string TolerancePolicy::describe(int dim) const {
  std::ostringstream out;
  out.precision(17);
  out << (mode == Mode::kRelative ? "relative" : "absolute") << ":" << resolved_value(dim);
  return out.str();
}

EigenDecomposition eig_sym(const RealSymMatrix& m) {
  const int n = m.dim();
  EigenDecomposition out;
  if (n == 0) {
    out.eigenvalues = Vector(0);
    out.eigenvectors = Matrix(0, 0);
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m.matrix(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("symmetric eigensolver did not converge");
  }
  // Eigen returns ascending order.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::reverse(order.begin(), order.end());

  Matrix vecs(n, n);
  Vector vals(n);
  for (int i = 0; i < n; ++i) {
    vals(i) = solver.eigenvalues()(order[i]);
    vecs.col(i) = solver.eigenvectors().col(order[i]);
    normalize_sign(vecs.col(i));
  }

  // Within runs of tied eigenvalues, order vectors lexicographically
  // (largest first) so the basis does not depend on solver internals more
  // than necessary.
  double scale = vals.cwiseAbs().maxCoeff();
  int start = 0;
  while (start < n) {
    int stop = start + 1;
    while (stop < n && vals(stop - 1) - vals(stop) <= kTieTol * scale) ++stop;
    if (stop - start > 1) {
      std::vector<Vector> group;
      for (int i = start; i < stop; ++i) group.push_back(vecs.col(i));
      std::stable_sort(group.begin(), group.end(), lexicographically_greater);
      for (int i = start; i < stop; ++i) vecs.col(i) = group[i - start];
    }
    start = stop;
  }

  out.eigenvalues = std::move(vals);
  out.eigenvectors = std::move(vecs);
  return out;
}

double effective_threshold(const EigenDecomposition& eig, const TolerancePolicy& tol) {
  const int n = static_cast<int>(eig.eigenvalues.size());
  double lambda_max = n == 0 ? 0.0 : eig.eigenvalues.cwiseAbs().maxCoeff();
  return tol.threshold(n, lambda_max);
}

int numerical_rank(const EigenDecomposition& eig, const TolerancePolicy& tol) {
  double tau = effective_threshold(eig, tol);
  int rank = 0;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    if (std::abs(eig.eigenvalues(i)) > tau) ++rank;
  }
  return rank;
}

int numerical_rank(const RealSymMatrix& m, const TolerancePolicy& tol) {
  return numerical_rank(eig_sym(m), tol);
}

RealSymMatrix pseudoinverse(const RealSymMatrix& m, const TolerancePolicy& tol) {
  double tau = 0;
  EigenDecomposition eig = checked_psd_eig(m, tol, &tau);
  const int n = m.dim();
  Matrix out = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    double lambda = eig.eigenvalues(k);
    if (lambda > tau) {
      out.noalias() += (1.0 / lambda) * eig.eigenvectors.col(k) * eig.eigenvectors.col(k).transpose();
    }
  }
  return RealSymMatrix(0.5 * (out + out.transpose()));
}

RealSymMatrix support_projector(const RealSymMatrix& m, const TolerancePolicy& tol) {
  double tau = 0;
  EigenDecomposition eig = checked_psd_eig(m, tol, &tau);
  const int n = m.dim();
  Matrix out = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    if (eig.eigenvalues(k) > tau) {
      out.noalias() += eig.eigenvectors.col(k) * eig.eigenvectors.col(k).transpose();
    }
  }
  return RealSymMatrix(0.5 * (out + out.transpose()));
}

Matrix sherman_morrison_inverse(const RealSymMatrix& a_inv, const Vector& u, const Vector& v) {
  const int n = a_inv.dim();
  if (u.size() != n || v.size() != n) {
    throw InputError("sherman_morrison_inverse: vector length does not match matrix dimension");
  }
  Vector a_inv_u = a_inv.matrix() * u;
  Vector v_a_inv = a_inv.matrix().transpose() * v;
  double denominator = 1.0 + v.dot(a_inv_u);
  double scale = std::max(1.0, max_abs(a_inv.matrix()) * u.norm() * v.norm());
  if (!(std::abs(denominator) > 1e-12 * scale)) {
    throw NumericalError("update makes matrix singular: 1 + v^T A^-1 u = " +
                         std::to_string(denominator));
  }
  return a_inv.matrix() - (a_inv_u * v_a_inv.transpose()) / denominator;
}

RealSymMatrix cholesky_inverse(const RealSymMatrix& m) {
  const int n = m.dim();
  if (n == 0) return RealSymMatrix::zero(0);
  Eigen::LLT<Matrix> llt(m.matrix());
  if (llt.info() != Eigen::Success) {
    throw NumericalError("matrix is not positive definite; Cholesky factorization failed");
  }
  Matrix inv = llt.solve(Matrix::Identity(n, n));
  return RealSymMatrix(0.5 * (inv + inv.transpose()));
}

}  // namespace qcrb
