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

// Information matrices: pure-state QFIM, closed forms for the built-in
// probe families and many-body models, classical FIM of a POVM, and a
// finite-difference oracle for the QFIM.

#ifndef QCRB_INFORMATION_H_
#define QCRB_INFORMATION_H_

#include <string>
#include <variant>
#include <vector>

#include "qcrb/numerics.h"
#include "qcrb/probes.h"

namespace qcrb {

enum class Provenance { kGenericQfim, kClosedForm, kClassicalFim, kFiniteDifference };

/// "generic_qfim", "closed_form", "classical_fim", "finite_difference".
std::string to_string(Provenance p);

/// A Fisher or quantum Fisher information matrix with parameter labels.
/// Construction checks PSD within 1e-10 * lambda_max.
class InfoMatrix {
 public:
  InfoMatrix(RealSymMatrix matrix, std::vector<std::string> param_labels, Provenance provenance,
             std::string context = {});
  /// Labels default to x1..xd.
  InfoMatrix(RealSymMatrix matrix, Provenance provenance, std::string context = {});

  const RealSymMatrix& matrix() const { return matrix_; }
  int dim() const { return matrix_.dim(); }
  const std::vector<std::string>& param_labels() const { return labels_; }
  Provenance provenance() const { return provenance_; }
  const std::string& context() const { return context_; }

  InfoMatrix with_labels(std::vector<std::string> labels) const;

 private:
  RealSymMatrix matrix_;
  std::vector<std::string> labels_;
  Provenance provenance_;
  std::string context_;
};

std::vector<std::string> default_param_labels(int dim);

/// Transverse-field Ising chain with uniform coupling; parameters x = (omega, g).
struct TransverseIsing {
  double omega = 0;
  double g = 0;
  int n_sites = 0;
};

/// Three-site XY model; parameters x = (lambda, gamma) at fixed field h.
struct XyThreeSite {
  double lambda = 0;
  double gamma = 0;
  double h = 0;
};

using ManyBodySpec = std::variant<TransverseIsing, XyThreeSite>;

/// "transverse_ising" or "xy_three_site".
std::string model_name(const ManyBodySpec& spec);
/// The model's own parameter values, in parameter order.
Vector model_point(const ManyBodySpec& spec);
std::vector<std::string> model_param_labels(const ManyBodySpec& spec);

/// Pure-state QFIM F_jk = 4 Re(<d_j psi|d_k psi> - <d_j psi|psi><psi|d_k psi>).
///
/// For linear-phase states the result does not depend on x; this is checked
/// at runtime against a second, shifted evaluation point.
InfoMatrix qfim(const LinearPhaseState& s, const Vector& x);

/// Closed-form QFIMs of the built-in families:
///   ghz_like       nu nu^T
///   noon_like      4 {(m+1) diag(nu^2) - nu nu^T} / (m+1)^2
///   cyclic_paired  (2/m) I + (1/m)(S + S^T), S the cyclic shift
/// Custom states throw InputError.
InfoMatrix closed_form_qfim(const FamilySpec& spec);

/// Inverse of the noon_like closed form through a Sherman-Morrison update of
/// its diagonal part.
Matrix noon_qfim_inverse(const Vector& nu);

/// lambda_k = (2/m)(1 + cos(2 pi k / m)) for k = 1..m. The k = m/2 value of
/// even m is returned as exactly 0.
std::vector<double> cyclic_spectrum(int m);

/// Closed-form QFIMs of the many-body models. A vanishing denominator throws
/// NumericalError("QFIM singular at critical point ...").
InfoMatrix many_body_qfim(const ManyBodySpec& spec);

/// Gradient of Omega = lambda gamma / (2h + lambda) with respect to
/// (lambda, gamma).
Vector xy_omega_gradient(const XyThreeSite& spec);

/// Classical FIM of `povm` at x. Outcomes with p < 1e-12 are dropped if
/// their gradient is also below 1e-12, otherwise NumericalError("FIM divergent
/// at this x").
InfoMatrix classical_fim(const LinearPhaseState& s, const Povm& povm, const Vector& x);

/// QFIM with derivatives replaced by central differences of the state vector
/// (step h in [1e-7, 1e-3]).
InfoMatrix qfim_fd_oracle(const LinearPhaseState& s, const Vector& x, double h);

}  // namespace qcrb

#endif  // QCRB_INFORMATION_H_
