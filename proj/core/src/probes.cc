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

#include "qcrb/probes.h"

#include <cmath>
#include <sstream>

#include "overloaded.h"
#include "qcrb/error.h"

namespace qcrb {

namespace {

constexpr double kNormTol = 1e-12;
constexpr double kPovmTol = 1e-10;

using internal::Overloaded;

void check_x(const LinearPhaseState& s, const Vector& x) {
  if (x.size() != s.n_params()) {
    throw InputError("x has length " + std::to_string(x.size()) + ", expected " +
                     std::to_string(s.n_params()));
  }
  if (!x.allFinite()) throw InputError("x has non-finite entries");
}

void check_finite_vector(const Vector& v, const std::string& field) {
  if (v.size() == 0) throw InputError(field + ": must not be empty");
  if (!v.allFinite()) throw InputError(field + ": entries must be finite");
}

}  // namespace

LinearPhaseState::LinearPhaseState(int n_params, std::vector<Ket> kets)
    : n_params_(n_params), kets_(std::move(kets)) {
  if (n_params_ < 1) throw InputError("n_params must be positive");
  if (kets_.empty()) throw InputError("kets: at least one ket is required");
  double norm = 0;
  for (size_t j = 0; j < kets_.size(); ++j) {
    const Ket& k = kets_[j];
    if (k.encoding.size() != n_params_) {
      throw InputError("kets[" + std::to_string(j) + "].encoding: length " +
                       std::to_string(k.encoding.size()) + ", expected " +
                       std::to_string(n_params_));
    }
    if (!k.encoding.allFinite() || !std::isfinite(k.amplitude.real()) ||
        !std::isfinite(k.amplitude.imag())) {
      throw InputError("kets[" + std::to_string(j) + "]: non-finite amplitude or encoding");
    }
    norm += std::norm(k.amplitude);
  }
  if (std::abs(norm - 1.0) > kNormTol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "kets: squared amplitudes sum to " << norm << ", expected 1";
    throw InputError(msg.str());
  }
}

std::string family_name(const FamilySpec& spec) {
  return std::visit(Overloaded{
                        [](const GhzLike&) { return std::string("ghz_like"); },
                        [](const NoonLike&) { return std::string("noon_like"); },
                        [](const CyclicPaired&) { return std::string("cyclic_paired"); },
                        [](const CustomState&) { return std::string("custom"); },
                    },
                    spec);
}

int parameter_count(const FamilySpec& spec) {
  return std::visit(Overloaded{
                        [](const GhzLike& g) { return static_cast<int>(g.nu.size()); },
                        [](const NoonLike& n) { return static_cast<int>(n.nu.size()); },
                        [](const CyclicPaired& c) { return c.modes; },
                        [](const CustomState& c) { return c.n_params; },
                    },
                    spec);
}

void validate(const FamilySpec& spec) {
  std::visit(Overloaded{
                 [](const GhzLike& g) { check_finite_vector(g.nu, "nu"); },
                 [](const NoonLike& n) {
                   check_finite_vector(n.nu, "nu");
                   for (Eigen::Index j = 0; j < n.nu.size(); ++j) {
                     if (n.nu(j) == 0.0) {
                       throw InputError("nu[" + std::to_string(j) +
                                        "]: noon_like requires every nu_j to be nonzero");
                     }
                   }
                 },
                 [](const CyclicPaired& c) {
                   if (c.modes < 2) throw InputError("m: cyclic_paired requires m >= 2");
                 },
                 [](const CustomState& c) {
                   // Constructing the state runs the normalization checks.
                   LinearPhaseState(c.n_params, c.kets);
                 },
             },
             spec);
}

LinearPhaseState build_family(const FamilySpec& spec) {
  validate(spec);
  return std::visit(
      Overloaded{
          [](const GhzLike& g) {
            const int d = static_cast<int>(g.nu.size());
            const double c = 1.0 / std::sqrt(2.0);
            return LinearPhaseState(d, {{"v0", c, Vector::Zero(d)}, {"v1", c, g.nu}});
          },
          [](const NoonLike& n) {
            const int m = static_cast<int>(n.nu.size());
            const double c = 1.0 / std::sqrt(static_cast<double>(m + 1));
            std::vector<Ket> kets;
            kets.push_back({"v0", c, Vector::Zero(m)});
            for (int j = 0; j < m; ++j) {
              Vector enc = Vector::Zero(m);
              enc(j) = n.nu(j);
              kets.push_back({"v" + std::to_string(j + 1), c, enc});
            }
            return LinearPhaseState(m, std::move(kets));
          },
          [](const CyclicPaired& cp) {
            const int m = cp.modes;
            const double c = 1.0 / std::sqrt(2.0 * m);
            std::vector<Ket> kets;
            for (int j = 0; j < m; ++j) {
              kets.push_back({"0_" + std::to_string(j + 1), c, Vector::Zero(m)});
            }
            for (int j = 0; j < m; ++j) {
              Vector enc = Vector::Zero(m);
              enc(j) += 1.0;
              enc((j + 1) % m) += 1.0;
              kets.push_back({"1_" + std::to_string(j + 1), c, enc});
            }
            return LinearPhaseState(m, std::move(kets));
          },
          [](const CustomState& c) { return LinearPhaseState(c.n_params, c.kets); },
      },
      spec);
}

ComplexVector state_vector(const LinearPhaseState& s, const Vector& x) {
  check_x(s, x);
  ComplexVector psi(s.dim());
  for (int j = 0; j < s.dim(); ++j) {
    const Ket& k = s.kets()[j];
    psi(j) = k.amplitude * std::polar(1.0, k.encoding.dot(x));
  }
  return psi;
}

std::vector<ComplexVector> state_derivatives(const LinearPhaseState& s, const Vector& x) {
  ComplexVector psi = state_vector(s, x);
  std::vector<ComplexVector> out;
  out.reserve(s.n_params());
  const Complex i_unit(0.0, 1.0);
  for (int p = 0; p < s.n_params(); ++p) {
    ComplexVector d(s.dim());
    for (int j = 0; j < s.dim(); ++j) d(j) = i_unit * s.kets()[j].encoding(p) * psi(j);
    out.push_back(std::move(d));
  }
  return out;
}

Povm::Povm(std::vector<ComplexMatrix> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw InputError("elements: a POVM needs at least one element");
  dim_ = static_cast<int>(elements_.front().rows());
  if (dim_ < 1) throw InputError("elements[0]: empty matrix");
  ComplexMatrix total = ComplexMatrix::Zero(dim_, dim_);
  for (size_t y = 0; y < elements_.size(); ++y) {
    const ComplexMatrix& e = elements_[y];
    const std::string field = "elements[" + std::to_string(y) + "]";
    if (e.rows() != dim_ || e.cols() != dim_) {
      throw InputError(field + ": expected a " + std::to_string(dim_) + "x" +
                       std::to_string(dim_) + " matrix");
    }
    if (!e.allFinite()) throw InputError(field + ": non-finite entries");
    if ((e - e.adjoint()).cwiseAbs().maxCoeff() > kPovmTol) {
      throw InputError(field + ": element is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(e, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -kPovmTol) {
      throw InputError(field + ": element is not positive semidefinite");
    }
    total += e;
  }
  double dev = (total - ComplexMatrix::Identity(dim_, dim_)).cwiseAbs().maxCoeff();
  if (dev > kPovmTol) {
    std::ostringstream msg;
    msg << "elements: sum deviates from identity by " << dev;
    throw InputError(msg.str());
  }
}

Povm Povm::identity(int dim) { return Povm({ComplexMatrix::Identity(dim, dim)}); }

Povm Povm::computational_basis(int dim) {
  return from_basis(ComplexMatrix::Identity(dim, dim));
}

Povm Povm::from_basis(const ComplexMatrix& unitary) {
  std::vector<ComplexMatrix> elements;
  for (Eigen::Index c = 0; c < unitary.cols(); ++c) {
    elements.push_back(unitary.col(c) * unitary.col(c).adjoint());
  }
  return Povm(std::move(elements));
}

Vector outcome_probabilities(const LinearPhaseState& s, const Povm& povm, const Vector& x) {
  if (povm.dim() != s.dim()) {
    throw InputError("POVM dimension " + std::to_string(povm.dim()) +
                     " does not match state dimension " + std::to_string(s.dim()));
  }
  ComplexVector psi = state_vector(s, x);
  Vector p(povm.size());
  for (int y = 0; y < povm.size(); ++y) {
    p(y) = psi.dot(povm.elements()[y] * psi).real();
  }
  return p;
}

Matrix probability_jacobian(const LinearPhaseState& s, const Povm& povm, const Vector& x) {
  if (povm.dim() != s.dim()) {
    throw InputError("POVM dimension " + std::to_string(povm.dim()) +
                     " does not match state dimension " + std::to_string(s.dim()));
  }
  ComplexVector psi = state_vector(s, x);
  std::vector<ComplexVector> dpsi = state_derivatives(s, x);
  Matrix jac(povm.size(), s.n_params());
  for (int y = 0; y < povm.size(); ++y) {
    ComplexVector m_psi = povm.elements()[y] * psi;
    for (int k = 0; k < s.n_params(); ++k) {
      // d<psi|M|psi> = 2 Re <d psi|M|psi>
      jac(y, k) = 2.0 * dpsi[k].dot(m_psi).real();
    }
  }
  return jac;
}

}  // namespace qcrb
