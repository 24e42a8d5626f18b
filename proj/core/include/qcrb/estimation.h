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

// Monte-Carlo check that the pseudoinverse bound is reached on the reduced
// parameter set: sample outcomes, maximize the likelihood over the reduced
// coordinates, compare the empirical covariance with F'^{-1} / n_shots.

#ifndef QCRB_ESTIMATION_H_
#define QCRB_ESTIMATION_H_

#include <cstdint>
#include <string>
#include <vector>

#include "qcrb/information.h"
#include "qcrb/numerics.h"
#include "qcrb/probes.h"
#include "qcrb/reduction.h"

namespace qcrb {

/// Counter-based 64-bit stream: output i is a SplitMix64 finalizer applied to
/// key + (i + 1) * golden_gamma, the key being derived from (seed, stream).
/// Any element can be computed without generating its predecessors, so
/// repetitions keyed by their index are reproducible in any order.
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t operator()();
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

struct OutcomeSample {
  std::vector<std::int64_t> counts;  // one entry per POVM element
  std::int64_t n_shots = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  Vector x_true;
};

/// Draws n_shots outcomes by inverse-CDF sampling of p(.|x). Throws
/// NumericalError when the probabilities do not sum to 1 within 1e-9.
OutcomeSample sample_outcomes(const LinearPhaseState& s, const Povm& povm, const Vector& x,
                              std::int64_t n_shots, std::uint64_t seed, std::uint64_t stream = 0);

/// Maximum-likelihood estimate of the reduced coordinates theta, with
/// x(theta) = V theta + (kernel part fixed by the constraint anchor).
///
/// A coarse grid over init +- pi in every coordinate is followed by damped
/// Newton steps until the per-shot log-likelihood gradient is below 1e-9.
/// Coordinates whose phase rates are all integers are wrapped to (-pi, pi].
/// Throws NumericalError("parameter not identified by this POVM") when the
/// likelihood is flat along some reduced direction.
Vector ml_estimate_reduced(const OutcomeSample& sample, const LinearPhaseState& s, const Povm& povm,
                           const ReducedProblem& reduced, const ConstraintFunction& constraint,
                           const Vector& init);

/// Same estimator over the full, unreduced parameter vector.
Vector ml_estimate_full(const OutcomeSample& sample, const LinearPhaseState& s, const Povm& povm,
                        const Vector& init);

struct EstimationRun {
  std::vector<Vector> estimates;
  RealSymMatrix empirical_cov;
  RealSymMatrix bound;  // F'^{-1} / n_shots
  int n_repetitions = 0;
  std::int64_t n_shots = 0;
  std::uint64_t seed = 0;

  RealSymMatrix classical_fim;  // full d x d at x_true
  ReducedProblem reduced;
  Vector theta_true;
  Vector mean;
  /// empirical_cov(i, i) / bound(i, i)
  Vector variance_ratio;
  /// (empirical_cov(i, i) - bound(i, i)) / standard error, standard error
  /// sqrt(2 / (n_reps - 1)) * bound(i, i).
  Vector diagonal_z;
  /// Smallest eigenvalue of empirical_cov - bound.
  double min_excess_eigenvalue = 0;
  double covariance_standard_error = 0;
  /// No diagonal z below -3 and min_excess_eigenvalue >= -3 SE.
  bool cri_respected = false;
};

/// Classical FIM -> reduction -> bound, then n_reps seeded repetitions of
/// sampling and maximum likelihood. Repetition i uses stream i of `seed`.
EstimationRun attainability_study(const LinearPhaseState& s, const Povm& povm, const Vector& x,
                                  std::int64_t n_shots, int n_reps, std::uint64_t seed,
                                  const TolerancePolicy& tol);

}  // namespace qcrb

#endif  // QCRB_ESTIMATION_H_
