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

// Linear-phase probe states
//
//   |psi_x> = sum_j c_j exp(i nu_j^T x) |j>
//
// and projective / general measurements over their ket basis. GHZ-like,
// NOON-like and cyclic phase-paired probes are all instances of this form.

#ifndef QCRB_PROBES_H_
#define QCRB_PROBES_H_

#include <complex>
#include <string>
#include <variant>
#include <vector>

#include "qcrb/numerics.h"

namespace qcrb {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

struct Ket {
  std::string label;
  Complex amplitude;
  /// Phase picked up per unit of each parameter (length n_params).
  Vector encoding;
};

class LinearPhaseState {
 public:
  /// Validates sum |c_j|^2 = 1 within 1e-12 and encoding lengths.
  LinearPhaseState(int n_params, std::vector<Ket> kets);

  int n_params() const { return n_params_; }
  int dim() const { return static_cast<int>(kets_.size()); }
  const std::vector<Ket>& kets() const { return kets_; }

 private:
  int n_params_;
  std::vector<Ket> kets_;
};

/// (|v0> + e^{i nu.x}|v1>)/sqrt(2).
struct GhzLike {
  Vector nu;
};

/// (|v0> + sum_j e^{i nu_j x_j}|vj>)/sqrt(m+1), every nu_j nonzero.
struct NoonLike {
  Vector nu;
};

/// (1/sqrt(2m)) sum_j (|0_j> + e^{i(x_j + x_{j(+)1})}|1_j>), m >= 2, with the
/// cyclic successor of m being 1.
struct CyclicPaired {
  int modes = 0;
};

/// Arbitrary kets; amplitudes need not be uniform.
struct CustomState {
  int n_params = 0;
  std::vector<Ket> kets;
};

using FamilySpec = std::variant<GhzLike, NoonLike, CyclicPaired, CustomState>;

/// "ghz_like", "noon_like", "cyclic_paired" or "custom".
std::string family_name(const FamilySpec& spec);
int parameter_count(const FamilySpec& spec);
/// Throws InputError naming the offending field.
void validate(const FamilySpec& spec);

LinearPhaseState build_family(const FamilySpec& spec);

/// Component j is c_j exp(i nu_j^T x).
ComplexVector state_vector(const LinearPhaseState& s, const Vector& x);

/// One vector per parameter k, component j equal to i [nu_j]_k c_j exp(i nu_j^T x).
std::vector<ComplexVector> state_derivatives(const LinearPhaseState& s, const Vector& x);

/// A POVM over the ket basis of a state.
class Povm {
 public:
  /// Each element Hermitian and PSD within 1e-10; elements sum to identity
  /// within 1e-10. Throws InputError otherwise.
  explicit Povm(std::vector<ComplexMatrix> elements);

  static Povm identity(int dim);
  static Povm computational_basis(int dim);
  /// Rank-one projectors onto the columns of a unitary.
  static Povm from_basis(const ComplexMatrix& unitary);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(elements_.size()); }
  const std::vector<ComplexMatrix>& elements() const { return elements_; }

 private:
  int dim_ = 0;
  std::vector<ComplexMatrix> elements_;
};

/// Born-rule probabilities p(y|x) = <psi_x|M_y|psi_x>.
Vector outcome_probabilities(const LinearPhaseState& s, const Povm& povm, const Vector& x);

/// Row y holds dp(y|x)/dx.
Matrix probability_jacobian(const LinearPhaseState& s, const Povm& povm, const Vector& x);

}  // namespace qcrb

#endif  // QCRB_PROBES_H_
