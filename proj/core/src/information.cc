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

#include "qcrb/information.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "overloaded.h"
#include "qcrb/error.h"

namespace qcrb {

namespace {

using internal::Overloaded;

constexpr double kPsdTol = 1e-10;
constexpr double kZeroProbability = 1e-12;
constexpr double kZeroGradient = 1e-12;
// Relative agreement required between the QFIM at x and at a shifted point.
constexpr double kXIndependenceTol = 1e-9;

std::string format_vector(const Vector& v) {
  std::ostringstream out;
  out.precision(17);
  out << "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) out << (i ? ", " : "") << v(i);
  out << ")";
  return out.str();
}

// 4 Re(<dj|dk> - <dj|psi><psi|dk>) from a state and its derivatives.
Matrix pure_state_qfim(const ComplexVector& psi, const std::vector<ComplexVector>& dpsi) {
  const int n = static_cast<int>(dpsi.size());
  Matrix f(n, n);
  std::vector<Complex> overlap(n);
  for (int j = 0; j < n; ++j) overlap[j] = dpsi[j].dot(psi);  // <d_j psi|psi>
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      Complex term = dpsi[j].dot(dpsi[k]) - overlap[j] * std::conj(overlap[k]);
      f(j, k) = 4.0 * term.real();
    }
  }
  return 0.5 * (f + f.transpose());
}

Matrix generic_qfim_at(const LinearPhaseState& s, const Vector& x) {
  return pure_state_qfim(state_vector(s, x), state_derivatives(s, x));
}

// Deterministic second evaluation point for the x-independence check.
Vector shifted_point(const Vector& x) {
  Vector shift(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    shift(i) = 0.7310585786300049 + 0.4142135623730951 * static_cast<double>(i);
  }
  return x + shift;
}

void check_noon_nu(const Vector& nu) { validate(FamilySpec{NoonLike{nu}}); }

}  // namespace

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::kGenericQfim:
      return "generic_qfim";
    case Provenance::kClosedForm:
      return "closed_form";
    case Provenance::kClassicalFim:
      return "classical_fim";
    case Provenance::kFiniteDifference:
      return "finite_difference";
  }
  return "unknown";
}

std::vector<std::string> default_param_labels(int dim) {
  std::vector<std::string> labels;
  for (int i = 0; i < dim; ++i) labels.push_back("x" + std::to_string(i + 1));
  return labels;
}

InfoMatrix::InfoMatrix(RealSymMatrix matrix, std::vector<std::string> param_labels,
                       Provenance provenance, std::string context)
    : matrix_(std::move(matrix)),
      labels_(std::move(param_labels)),
      provenance_(provenance),
      context_(std::move(context)) {
  if (static_cast<int>(labels_.size()) != matrix_.dim()) {
    throw InputError("labels: " + std::to_string(labels_.size()) + " labels for " +
                     std::to_string(matrix_.dim()) + " parameters");
  }
  if (matrix_.dim() > 0) {
    Vector eigenvalues = eig_sym(matrix_).eigenvalues;
    double lambda_max = eigenvalues.cwiseAbs().maxCoeff();
    double smallest = eigenvalues(eigenvalues.size() - 1);
    if (smallest < -kPsdTol * lambda_max) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "information matrix is not PSD: smallest eigenvalue " << smallest;
      throw NumericalError(msg.str());
    }
  }
}

InfoMatrix::InfoMatrix(RealSymMatrix matrix, Provenance provenance, std::string context)
    : InfoMatrix(matrix, default_param_labels(matrix.dim()), provenance, std::move(context)) {}

InfoMatrix InfoMatrix::with_labels(std::vector<std::string> labels) const {
  return InfoMatrix(matrix_, std::move(labels), provenance_, context_);
}

std::string model_name(const ManyBodySpec& spec) {
  return std::visit(Overloaded{
                        [](const TransverseIsing&) { return std::string("transverse_ising"); },
                        [](const XyThreeSite&) { return std::string("xy_three_site"); },
                    },
                    spec);
}

Vector model_point(const ManyBodySpec& spec) {
  return std::visit(Overloaded{
                        [](const TransverseIsing& t) { return Vector{{t.omega, t.g}}; },
                        [](const XyThreeSite& xy) { return Vector{{xy.lambda, xy.gamma}}; },
                    },
                    spec);
}

std::vector<std::string> model_param_labels(const ManyBodySpec& spec) {
  return std::visit(Overloaded{
                        [](const TransverseIsing&) { return std::vector<std::string>{"omega", "g"}; },
                        [](const XyThreeSite&) { return std::vector<std::string>{"lambda", "gamma"}; },
                    },
                    spec);
}

InfoMatrix qfim(const LinearPhaseState& s, const Vector& x) {
  Matrix f = generic_qfim_at(s, x);
  Matrix f_shifted = generic_qfim_at(s, shifted_point(x));
  double scale = std::max(1.0, max_abs(f));
  if (max_abs(f - f_shifted) > kXIndependenceTol * scale) {
    throw NumericalError("QFIM of a linear-phase state changed with x; derivative chain is inconsistent");
  }
  return InfoMatrix(RealSymMatrix(f), Provenance::kGenericQfim, "x = " + format_vector(x));
}

InfoMatrix closed_form_qfim(const FamilySpec& spec) {
  validate(spec);
  return std::visit(
      Overloaded{
          [](const GhzLike& g) {
            return InfoMatrix(RealSymMatrix(g.nu * g.nu.transpose()), Provenance::kClosedForm,
                              "ghz_like nu nu^T");
          },
          [](const NoonLike& n) {
            const double m1 = static_cast<double>(n.nu.size() + 1);
            Matrix f = 4.0 * (m1 * Matrix(n.nu.cwiseAbs2().asDiagonal()) - n.nu * n.nu.transpose()) /
                       (m1 * m1);
            return InfoMatrix(RealSymMatrix(f), Provenance::kClosedForm,
                              "noon_like 4{(m+1)diag(nu^2) - nu nu^T}/(m+1)^2");
          },
          [](const CyclicPaired& c) {
            const int m = c.modes;
            Matrix f = Matrix::Zero(m, m);
            for (int j = 0; j < m; ++j) {
              f(j, j) += 2.0 / m;
              // Each cyclic adjacency contributes 1/m; for m = 2 both
              // neighbours of a mode are the same mode.
              f(j, (j + 1) % m) += 1.0 / m;
              f((j + 1) % m, j) += 1.0 / m;
            }
            return InfoMatrix(RealSymMatrix(f), Provenance::kClosedForm,
                              "cyclic_paired: 2/m diagonal, 1/m cyclic neighbours");
          },
          [](const CustomState&) -> InfoMatrix {
            throw InputError("family custom: no closed form; use generic qfim");
          },
      },
      spec);
}

Matrix noon_qfim_inverse(const Vector& nu) {
  check_noon_nu(nu);
  const double m1 = static_cast<double>(nu.size() + 1);
  // F = A + u v^T with A = (4/(m+1)) diag(nu^2), u = -(4/(m+1)^2) nu, v = nu.
  Vector a_inv_diag = (m1 / 4.0) * nu.cwiseAbs2().cwiseInverse();
  RealSymMatrix a_inv(Matrix(a_inv_diag.asDiagonal()));
  Vector u = -(4.0 / (m1 * m1)) * nu;
  return sherman_morrison_inverse(a_inv, u, nu);
}

std::vector<double> cyclic_spectrum(int m) {
  if (m < 2) throw InputError("m: cyclic_spectrum requires m >= 2");
  std::vector<double> out;
  out.reserve(m);
  for (int k = 1; k <= m; ++k) {
    if (2 * k == m) {
      out.push_back(0.0);
      continue;
    }
    double angle = 2.0 * std::numbers::pi * k / m;
    out.push_back((2.0 / m) * (1.0 + std::cos(angle)));
  }
  return out;
}

InfoMatrix many_body_qfim(const ManyBodySpec& spec) {
  return std::visit(
      Overloaded{
          [](const TransverseIsing& t) {
            if (t.n_sites < 2 || t.n_sites % 2 != 0) {
              throw InputError("n_sites: transverse_ising requires an even N >= 2");
            }
            if (!std::isfinite(t.omega) || !std::isfinite(t.g)) {
              throw InputError("omega/g: must be finite");
            }
            const double radius2 = t.g * t.g + t.omega * t.omega;
            double weight = 0;
            for (int n = 0; n < t.n_sites / 2; ++n) {
              double k = std::numbers::pi * (2 * n + 1) / t.n_sites;
              double denom = radius2 - 2.0 * t.g * t.omega * std::cos(k);
              if (!(denom > 1e-14 * radius2)) {
                std::ostringstream msg;
                msg.precision(17);
                msg << "QFIM singular at critical point: denominator g^2 + omega^2 - 2 g omega cos k"
                    << " vanishes at k = " << k << " (n = " << n << ")";
                throw NumericalError(msg.str());
              }
              double s = std::sin(k);
              weight += s * s / (denom * denom);
            }
            Matrix f{{t.g * t.g, -t.g * t.omega}, {-t.g * t.omega, t.omega * t.omega}};
            std::ostringstream ctx;
            ctx.precision(17);
            ctx << "transverse_ising omega=" << t.omega << " g=" << t.g << " N=" << t.n_sites;
            return InfoMatrix(RealSymMatrix(weight * f), {"omega", "g"}, Provenance::kClosedForm,
                              ctx.str());
          },
          [](const XyThreeSite& xy) {
            const double l = xy.lambda, gm = xy.gamma, h = xy.h;
            if (!std::isfinite(l) || !std::isfinite(gm) || !std::isfinite(h)) {
              throw InputError("lambda/gamma/h: must be finite");
            }
            const double denom = (3.0 * gm * gm + 1.0) * l * l + 4.0 * h * h + 4.0 * h * l;
            if (denom == 0.0) {
              throw NumericalError(
                  "QFIM singular at critical point: (3 gamma^2 + 1) lambda^2 + 4h^2 + 4h lambda = 0");
            }
            const double off = 6.0 * gm * h * l * (2.0 * h + l);
            Matrix f{{12.0 * gm * gm * h * h, off}, {off, 3.0 * l * l * (l + 2.0 * h) * (l + 2.0 * h)}};
            std::ostringstream ctx;
            ctx.precision(17);
            ctx << "xy_three_site lambda=" << l << " gamma=" << gm << " h=" << h;
            return InfoMatrix(RealSymMatrix(f / (denom * denom)), {"lambda", "gamma"},
                              Provenance::kClosedForm, ctx.str());
          },
      },
      spec);
}

Vector xy_omega_gradient(const XyThreeSite& spec) {
  const double s = 2.0 * spec.h + spec.lambda;
  if (s == 0.0) throw NumericalError("Omega undefined: 2h + lambda = 0");
  return Vector{{2.0 * spec.h * spec.gamma / (s * s), spec.lambda / s}};
}

InfoMatrix classical_fim(const LinearPhaseState& s, const Povm& povm, const Vector& x) {
  Vector p = outcome_probabilities(s, povm, x);
  Matrix jac = probability_jacobian(s, povm, x);
  const int n = s.n_params();
  Matrix f = Matrix::Zero(n, n);
  for (int y = 0; y < povm.size(); ++y) {
    if (p(y) < kZeroProbability) {
      double grad = jac.row(y).cwiseAbs().maxCoeff();
      if (grad < kZeroGradient) continue;
      std::ostringstream msg;
      msg.precision(17);
      msg << "FIM divergent at this x: outcome " << y << " has p = " << p(y)
          << " but |dp/dx| = " << grad;
      throw NumericalError(msg.str());
    }
    f.noalias() += jac.row(y).transpose() * jac.row(y) / p(y);
  }
  return InfoMatrix(RealSymMatrix(0.5 * (f + f.transpose())), Provenance::kClassicalFim,
                    "x = " + format_vector(x));
}

InfoMatrix qfim_fd_oracle(const LinearPhaseState& s, const Vector& x, double h) {
  if (!(h >= 1e-7 && h <= 1e-3)) throw InputError("h: finite-difference step must lie in [1e-7, 1e-3]");
  ComplexVector psi = state_vector(s, x);
  std::vector<ComplexVector> dpsi;
  dpsi.reserve(s.n_params());
  for (int k = 0; k < s.n_params(); ++k) {
    Vector plus = x, minus = x;
    plus(k) += h;
    minus(k) -= h;
    dpsi.push_back((state_vector(s, plus) - state_vector(s, minus)) / (2.0 * h));
  }
  return InfoMatrix(RealSymMatrix(pure_state_qfim(psi, dpsi)), Provenance::kFiniteDifference,
                    "x = " + format_vector(x) + ", h = " + std::to_string(h));
}

}  // namespace qcrb
