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

#include "qcrb/estimation.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include "qcrb/error.h"

namespace qcrb {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;
constexpr double kProbabilitySumTol = 1e-9;
constexpr double kGradientTol = 1e-9;
constexpr double kNegligibleProbability = 1e-12;
constexpr double kIdentifiabilityTol = 1e-9;
constexpr double kIntegerRateTol = 1e-12;
constexpr int kGridBudget = 4096;
constexpr int kMaxNewtonIterations = 200;
constexpr int kMaxPeaks = 16;
constexpr double kTieTol = 1e-9;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double wrap_phase(double theta) {
  double r = std::remainder(theta, 2.0 * std::numbers::pi);
  if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
  return r;
}

// Log-likelihood of a sample over coordinates theta, x = basis * theta + offset,
// normalized per shot.
class Likelihood {
 public:
  Likelihood(const LinearPhaseState& s, const Povm& povm, const Matrix& basis,
             const Vector& offset, const OutcomeSample& sample)
      : s_(s), povm_(povm), sample_(sample) {
    if (povm.dim() != s.dim()) {
      throw InputError("POVM dimension " + std::to_string(povm.dim()) +
                       " does not match state dimension " + std::to_string(s.dim()));
    }
    if (static_cast<int>(sample.counts.size()) != povm.size()) {
      throw InputError("sample has " + std::to_string(sample.counts.size()) +
                       " outcome counts, POVM has " + std::to_string(povm.size()) + " elements");
    }
    if (sample.n_shots < 1) throw InputError("sample has no shots");
    const int n = s.dim();
    rates_.resize(n, basis.cols());
    base_phase_.resize(n);
    for (int j = 0; j < n; ++j) {
      rates_.row(j) = s.kets()[j].encoding.transpose() * basis;
      base_phase_(j) = s.kets()[j].encoding.dot(offset);
    }
  }

  int dim() const { return static_cast<int>(rates_.cols()); }
  const Matrix& rates() const { return rates_; }

  ComplexVector psi(const Vector& theta) const {
    ComplexVector out(s_.dim());
    for (int j = 0; j < s_.dim(); ++j) {
      out(j) = s_.kets()[j].amplitude * std::polar(1.0, base_phase_(j) + rates_.row(j).dot(theta));
    }
    return out;
  }

  double value(const Vector& theta) const {
    ComplexVector v = psi(theta);
    double total = 0;
    for (int y = 0; y < povm_.size(); ++y) {
      if (sample_.counts[y] == 0) continue;
      double p = v.dot(povm_.elements()[y] * v).real();
      if (!(p > 0)) return -std::numeric_limits<double>::infinity();
      total += static_cast<double>(sample_.counts[y]) * std::log(p);
    }
    return total / static_cast<double>(sample_.n_shots);
  }

  // Gradient and Hessian of value().
  void derivatives(const Vector& theta, Vector* grad, Matrix* hess) const {
    const int r = dim();
    ComplexVector v = psi(theta);
    std::vector<ComplexVector> dv(r, ComplexVector(s_.dim()));
    const Complex i_unit(0.0, 1.0);
    for (int a = 0; a < r; ++a) {
      for (int j = 0; j < s_.dim(); ++j) dv[a](j) = i_unit * rates_(j, a) * v(j);
    }
    grad->setZero(r);
    hess->setZero(r, r);
    for (int y = 0; y < povm_.size(); ++y) {
      if (sample_.counts[y] == 0) continue;
      const ComplexMatrix& m = povm_.elements()[y];
      ComplexVector mv = m * v;
      double p = v.dot(mv).real();
      Vector dp(r);
      std::vector<ComplexVector> mdv(r);
      for (int a = 0; a < r; ++a) {
        dp(a) = 2.0 * dv[a].dot(mv).real();
        mdv[a] = m * dv[a];
      }
      Matrix d2p(r, r);
      for (int a = 0; a < r; ++a) {
        for (int b = 0; b < r; ++b) {
          // d_a d_b psi_j = -rate_ja rate_jb psi_j
          Complex second = 0;
          for (int j = 0; j < s_.dim(); ++j) {
            second += std::conj(-rates_(j, a) * rates_(j, b) * v(j)) * mv(j);
          }
          d2p(a, b) = 2.0 * (second + dv[a].dot(mdv[b])).real();
        }
      }
      double w = static_cast<double>(sample_.counts[y]) / static_cast<double>(sample_.n_shots);
      *grad += w * dp / p;
      *hess += w * (d2p / p - dp * dp.transpose() / (p * p));
    }
  }

  // Per-shot classical Fisher information in theta coordinates; negligible
  // outcomes are skipped.
  Matrix fisher(const Vector& theta) const {
    const int r = dim();
    ComplexVector v = psi(theta);
    Matrix f = Matrix::Zero(r, r);
    for (int y = 0; y < povm_.size(); ++y) {
      ComplexVector mv = povm_.elements()[y] * v;
      double p = v.dot(mv).real();
      if (p < kNegligibleProbability) continue;
      Vector dp(r);
      for (int a = 0; a < r; ++a) {
        Complex acc = 0;
        for (int j = 0; j < s_.dim(); ++j) {
          acc += std::conj(Complex(0.0, rates_(j, a)) * v(j)) * mv(j);
        }
        dp(a) = 2.0 * acc.real();
      }
      f += dp * dp.transpose() / p;
    }
    return f;
  }

 private:
  const LinearPhaseState& s_;
  const Povm& povm_;
  const OutcomeSample& sample_;
  Matrix rates_;
  Vector base_phase_;
};

struct Refined {
  Vector theta;
  double value = 0;
  double grad_norm = 0;
};

// Damped Newton ascent from `start` until the per-shot gradient vanishes.
Refined refine(const Likelihood& lik, const Vector& start, double start_value) {
  const int r = lik.dim();
  Vector grad;
  Matrix hess;
  Refined out{start, start_value, 0};
  for (int iter = 0; iter < kMaxNewtonIterations; ++iter) {
    lik.derivatives(out.theta, &grad, &hess);
    out.grad_norm = grad.norm();
    if (out.grad_norm < kGradientTol) return out;
    Matrix a = -hess;
    double damping = 0;
    const double scale = std::max(1.0, max_abs(a));
    const double rounding_slack =
        64 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(out.value));
    bool moved = false;
    for (int attempt = 0; attempt < 60 && !moved; ++attempt) {
      Eigen::LLT<Matrix> llt(a + damping * Matrix::Identity(r, r));
      if (llt.info() == Eigen::Success) {
        Vector delta = llt.solve(grad);
        for (double t = 1.0; t > 1e-10; t *= 0.5) {
          Vector trial = out.theta + t * delta;
          double trial_value = lik.value(trial);
          bool accept = trial_value >= out.value;
          // Close to the optimum the value change drops below rounding;
          // a smaller gradient is then the only usable signal.
          if (!accept && trial_value >= out.value - rounding_slack) {
            Vector trial_grad;
            Matrix trial_hess;
            lik.derivatives(trial, &trial_grad, &trial_hess);
            accept = trial_grad.norm() < out.grad_norm;
          }
          if (accept) {
            moved = (trial - out.theta).norm() > 0;
            out.theta = trial;
            out.value = trial_value;
            break;
          }
        }
      }
      damping = damping == 0 ? 1e-8 * scale : damping * 10.0;
    }
    if (!moved) break;
  }
  lik.derivatives(out.theta, &grad, &hess);
  out.grad_norm = grad.norm();
  return out;
}

Vector maximize(const Likelihood& lik, const Vector& init) {
  const int r = lik.dim();
  if (r < 1) throw InputError("reduced dimension must be at least 1");
  if (init.size() != r) {
    throw InputError("init has length " + std::to_string(init.size()) + ", expected " +
                     std::to_string(r));
  }

  // Coarse grid over init +- pi in every coordinate.
  int points = static_cast<int>(std::floor(std::pow(kGridBudget, 1.0 / r)));
  points = std::clamp(points, 5, 257);
  long total = 1;
  for (int a = 0; a < r; ++a) total *= points;
  const double step = 2.0 * std::numbers::pi / (points - 1);

  auto grid_point = [&](long idx) {
    Vector theta(r);
    for (int a = 0; a < r; ++a) {
      theta(a) = init(a) - std::numbers::pi + step * static_cast<double>(idx % points);
      idx /= points;
    }
    return theta;
  };

  std::vector<double> values(total);
  Matrix fisher_sum = Matrix::Zero(r, r);
  double best_value = -std::numeric_limits<double>::infinity();
  for (long idx = 0; idx < total; ++idx) {
    Vector theta = grid_point(idx);
    fisher_sum += lik.fisher(theta);
    values[idx] = lik.value(theta);
    best_value = std::max(best_value, values[idx]);
  }

  Matrix fisher_avg = fisher_sum / static_cast<double>(total);
  Eigen::SelfAdjointEigenSolver<Matrix> fisher_eig(fisher_avg, Eigen::EigenvaluesOnly);
  double f_max = fisher_eig.eigenvalues().maxCoeff();
  double f_min = fisher_eig.eigenvalues().minCoeff();
  if (!(f_max > kNegligibleProbability) || f_min <= kIdentifiabilityTol * f_max) {
    throw NumericalError(
        "parameter not identified by this POVM: the likelihood is flat along at least one "
        "estimated direction");
  }
  if (!std::isfinite(best_value)) {
    throw NumericalError("likelihood is zero on the whole search grid");
  }

  // Grid points not beaten by any axis neighbour seed the refinement. Phase
  // likelihoods are often symmetric (p(theta) = p(-theta) for real POVMs), so
  // several peaks can tie exactly; each one is refined.
  std::vector<long> seeds;
  for (long idx = 0; idx < total; ++idx) {
    if (!std::isfinite(values[idx])) continue;
    bool peak = true;
    long stride = 1;
    for (int a = 0; a < r && peak; ++a) {
      long coord = (idx / stride) % points;
      if (coord > 0 && values[idx - stride] > values[idx]) peak = false;
      if (coord + 1 < points && values[idx + stride] > values[idx]) peak = false;
      stride *= points;
    }
    if (peak) seeds.push_back(idx);
  }
  std::stable_sort(seeds.begin(), seeds.end(),
                   [&](long a, long b) { return values[a] > values[b]; });
  if (seeds.size() > static_cast<size_t>(kMaxPeaks)) seeds.resize(kMaxPeaks);

  // Highest likelihood wins; exact ties go to the peak nearest init.
  std::optional<Refined> chosen;
  double worst_grad = 0;
  for (long idx : seeds) {
    Refined cand = refine(lik, grid_point(idx), values[idx]);
    if (cand.grad_norm >= kGradientTol) {
      worst_grad = std::max(worst_grad, cand.grad_norm);
      continue;
    }
    if (!chosen) {
      chosen = cand;
      continue;
    }
    double margin = kTieTol * std::max(1.0, std::abs(chosen->value));
    bool better = cand.value > chosen->value + margin;
    bool tie = std::abs(cand.value - chosen->value) <= margin;
    if (better || (tie && (cand.theta - init).norm() < (chosen->theta - init).norm())) {
      chosen = cand;
    }
  }
  if (!chosen) {
    std::ostringstream msg;
    msg << "maximum-likelihood refinement did not converge (|grad| = " << worst_grad << ")";
    throw NumericalError(msg.str());
  }

  Vector theta = chosen->theta;
  for (int a = 0; a < r; ++a) {
    bool integer_rates = true;
    for (Eigen::Index j = 0; j < lik.rates().rows(); ++j) {
      double rate = lik.rates()(j, a);
      if (std::abs(rate - std::round(rate)) > kIntegerRateTol) integer_rates = false;
    }
    if (integer_rates) theta(a) = wrap_phase(theta(a));
  }
  return theta;
}

bool integer_rates(const LinearPhaseState& s, const Matrix& basis, int a) {
  for (const Ket& k : s.kets()) {
    double rate = k.encoding.dot(basis.col(a));
    if (std::abs(rate - std::round(rate)) > kIntegerRateTol) return false;
  }
  return true;
}

}  // namespace

CounterStream::CounterStream(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(seed ^ mix64(stream + kGoldenGamma))) {}

std::uint64_t CounterStream::operator()() {
  ++counter_;
  return mix64(key_ + counter_ * kGoldenGamma);
}

double CounterStream::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

OutcomeSample sample_outcomes(const LinearPhaseState& s, const Povm& povm, const Vector& x,
                              std::int64_t n_shots, std::uint64_t seed, std::uint64_t stream) {
  if (n_shots < 1) throw InputError("shots: n_shots must be at least 1");
  Vector p = outcome_probabilities(s, povm, x);
  double sum = p.sum();
  if (std::abs(sum - 1.0) > kProbabilitySumTol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "outcome probabilities sum to " << sum << ", expected 1";
    throw NumericalError(msg.str());
  }
  std::vector<double> cdf(p.size());
  double acc = 0;
  for (Eigen::Index y = 0; y < p.size(); ++y) {
    acc += std::max(0.0, p(y));
    cdf[y] = acc;
  }

  OutcomeSample out;
  out.counts.assign(p.size(), 0);
  out.n_shots = n_shots;
  out.seed = seed;
  out.stream = stream;
  out.x_true = x;
  CounterStream rng(seed, stream);
  for (std::int64_t shot = 0; shot < n_shots; ++shot) {
    double u = rng.uniform() * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    ++out.counts[it - cdf.begin()];
  }
  return out;
}

Vector ml_estimate_reduced(const OutcomeSample& sample, const LinearPhaseState& s, const Povm& povm,
                           const ReducedProblem& reduced, const ConstraintFunction& constraint,
                           const Vector& init) {
  const Matrix& basis = reduced.coefficients;
  if (basis.rows() != s.n_params()) {
    throw InputError("reduced problem has " + std::to_string(basis.rows()) +
                     " parameters, state has " + std::to_string(s.n_params()));
  }
  Vector offset = Vector::Zero(s.n_params());
  if (!constraint.empty()) {
    if (constraint.kernel_basis.rows() != s.n_params()) {
      throw InputError("constraint dimension does not match the state");
    }
    // Vbar^T x = -C on the constraint surface.
    offset = -(constraint.kernel_basis * constraint.constant);
  }
  Likelihood lik(s, povm, basis, offset, sample);
  return maximize(lik, init);
}

Vector ml_estimate_full(const OutcomeSample& sample, const LinearPhaseState& s, const Povm& povm,
                        const Vector& init) {
  const int d = s.n_params();
  Likelihood lik(s, povm, Matrix::Identity(d, d), Vector::Zero(d), sample);
  return maximize(lik, init);
}

EstimationRun attainability_study(const LinearPhaseState& s, const Povm& povm, const Vector& x,
                                  std::int64_t n_shots, int n_reps, std::uint64_t seed,
                                  const TolerancePolicy& tol) {
  if (n_reps < 2) throw InputError("reps: at least 2 repetitions are required");
  if (n_shots < 1) throw InputError("shots: n_shots must be at least 1");

  InfoMatrix fim = classical_fim(s, povm, x);
  SupportDecomposition dec = support_decomposition(fim, tol);
  if (dec.rank == 0) {
    throw NumericalError("no identifiable parameter: the classical FIM of this POVM is zero");
  }

  EstimationRun run;
  run.classical_fim = fim.matrix();
  run.reduced = reduce_problem(fim, dec);
  ConstraintFunction constraint = constraint_function(dec, x);
  const int r = dec.rank;
  const Matrix& basis = run.reduced.coefficients;
  run.bound = RealSymMatrix(cholesky_inverse(run.reduced.reduced_fim).matrix() /
                            static_cast<double>(n_shots));
  run.n_repetitions = n_reps;
  run.n_shots = n_shots;
  run.seed = seed;
  run.theta_true = basis.transpose() * x;
  for (int a = 0; a < r; ++a) {
    if (integer_rates(s, basis, a)) run.theta_true(a) = wrap_phase(run.theta_true(a));
  }

  run.estimates.reserve(n_reps);
  for (int rep = 0; rep < n_reps; ++rep) {
    OutcomeSample sample = sample_outcomes(s, povm, x, n_shots, seed, static_cast<std::uint64_t>(rep));
    run.estimates.push_back(ml_estimate_reduced(sample, s, povm, run.reduced, constraint, run.theta_true));
  }

  run.mean = Vector::Zero(r);
  for (const Vector& e : run.estimates) run.mean += e;
  run.mean /= static_cast<double>(n_reps);
  Matrix cov = Matrix::Zero(r, r);
  for (const Vector& e : run.estimates) cov += (e - run.mean) * (e - run.mean).transpose();
  cov /= static_cast<double>(n_reps - 1);
  run.empirical_cov = RealSymMatrix(0.5 * (cov + cov.transpose()));

  const Matrix& b = run.bound.matrix();
  const double rel_se = std::sqrt(2.0 / static_cast<double>(n_reps - 1));
  run.variance_ratio.resize(r);
  run.diagonal_z.resize(r);
  for (int a = 0; a < r; ++a) {
    run.variance_ratio(a) = cov(a, a) / b(a, a);
    run.diagonal_z(a) = (cov(a, a) - b(a, a)) / (rel_se * b(a, a));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> excess(run.empirical_cov.matrix() - b, Eigen::EigenvaluesOnly);
  run.min_excess_eigenvalue = excess.eigenvalues().minCoeff();
  Eigen::SelfAdjointEigenSolver<Matrix> bound_eig(b, Eigen::EigenvaluesOnly);
  run.covariance_standard_error = rel_se * bound_eig.eigenvalues().maxCoeff();
  run.cri_respected = run.diagonal_z.minCoeff() >= -3.0 &&
                      run.min_excess_eigenvalue >= -3.0 * run.covariance_standard_error;
  return run;
}

}  // namespace qcrb
