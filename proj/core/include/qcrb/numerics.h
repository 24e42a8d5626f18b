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

// Dense symmetric-matrix primitives with an explicit tolerance policy.
//
// Every routine that has to decide whether an eigenvalue is "zero" goes
// through TolerancePolicy, so rank, pseudoinverse and support projector all
// agree on the same support for a given matrix.

#ifndef QCRB_NUMERICS_H_
#define QCRB_NUMERICS_H_

#include <Eigen/Dense>
#include <optional>
#include <string>

namespace qcrb {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Largest absolute entry, 0 for an empty matrix.
double max_abs(const Matrix& m);

/// A real symmetric matrix. Construction rejects non-finite entries and
/// asymmetry above 1e-12 * max(1, max|M|); the stored matrix is the exact
/// symmetric part of the input.
class RealSymMatrix {
 public:
  RealSymMatrix() = default;
  explicit RealSymMatrix(const Matrix& m);

  static RealSymMatrix zero(int dim);
  static RealSymMatrix identity(int dim);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  double operator()(int j, int k) const { return m_(j, k); }

 private:
  Matrix m_;
};

/// Eigenpairs sorted by descending eigenvalue. Eigenvectors are the columns
/// of `eigenvectors`; each has its leading nonzero entry positive.
struct EigenDecomposition {
  Vector eigenvalues;
  Matrix eigenvectors;
};

/// How "numerically zero" is decided for eigenvalues.
///
/// relative: tau = value * lambda_max, lambda_max the largest |eigenvalue|.
/// absolute: tau = value.
/// When `value` is unset the relative default dim * 2.2e-16 * 64 is used.
struct TolerancePolicy {
  enum class Mode { kRelative, kAbsolute };

  Mode mode = Mode::kRelative;
  std::optional<double> value;

  static TolerancePolicy relative(double v);
  static TolerancePolicy absolute(double v);
  static TolerancePolicy machine_default() { return {}; }

  /// The value actually used for a matrix of dimension `dim`.
  double resolved_value(int dim) const;
  /// Effective threshold tau.
  double threshold(int dim, double lambda_max) const;
  std::string describe(int dim) const;
};

EigenDecomposition eig_sym(const RealSymMatrix& m);

/// Effective threshold for an already computed decomposition.
double effective_threshold(const EigenDecomposition& eig, const TolerancePolicy& tol);

/// Number of eigenvalues with magnitude above tau.
int numerical_rank(const RealSymMatrix& m, const TolerancePolicy& tol);
int numerical_rank(const EigenDecomposition& eig, const TolerancePolicy& tol);

/// Moore-Penrose pseudoinverse of a PSD matrix. Eigenvalues in (-tau, tau)
/// count as zero; an eigenvalue below -tau throws NumericalError.
RealSymMatrix pseudoinverse(const RealSymMatrix& m, const TolerancePolicy& tol);

/// Orthogonal projector onto the support; same PSD requirement as pseudoinverse.
RealSymMatrix support_projector(const RealSymMatrix& m, const TolerancePolicy& tol);

/// (A + u v^T)^{-1} from A^{-1}. Throws NumericalError when
/// |1 + v^T A^{-1} u| <= 1e-12 * max(1, max|A^{-1}| * |u| * |v|).
Matrix sherman_morrison_inverse(const RealSymMatrix& a_inv, const Vector& u, const Vector& v);

/// Inverse of a symmetric positive definite matrix through a Cholesky
/// factorization. Independent of the eigen-based routines above.
RealSymMatrix cholesky_inverse(const RealSymMatrix& m);

}  // namespace qcrb

#endif  // QCRB_NUMERICS_H_
