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

#include <benchmark/benchmark.h>

#include <random>

#include "qcrb/bounds.h"
#include "qcrb/estimation.h"
#include "qcrb/information.h"
#include "qcrb/reduction.h"

namespace qcrb {
namespace {

RealSymMatrix random_psd(int d, int rank, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  Matrix g(d, rank);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < rank; ++j) g(i, j) = n(rng);
  return RealSymMatrix(g * g.transpose());
}

void BM_EigSym(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  RealSymMatrix m = random_psd(d, d, 1);
  for (auto _ : state) benchmark::DoNotOptimize(eig_sym(m));
}
BENCHMARK(BM_EigSym)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_Pseudoinverse(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  RealSymMatrix m = random_psd(d, d / 2 + 1, 2);
  const TolerancePolicy tol = TolerancePolicy::machine_default();
  for (auto _ : state) benchmark::DoNotOptimize(pseudoinverse(m, tol));
}
BENCHMARK(BM_Pseudoinverse)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_CyclicQfim(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  LinearPhaseState s = build_family(CyclicPaired{m});
  Vector x = Vector::LinSpaced(m, 0.1, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(qfim(s, x));
}
BENCHMARK(BM_CyclicQfim)->Arg(4)->Arg(8)->Arg(12);

void BM_SupportDecomposition(benchmark::State& state) {
  InfoMatrix f = closed_form_qfim(CyclicPaired{static_cast<int>(state.range(0))});
  const TolerancePolicy tol = TolerancePolicy::machine_default();
  for (auto _ : state) benchmark::DoNotOptimize(support_decomposition(f, tol));
}
BENCHMARK(BM_SupportDecomposition)->Arg(4)->Arg(12);

void BM_AttainabilityStudy(benchmark::State& state) {
  Vector nu(1);
  nu << 1;
  LinearPhaseState s = build_family(GhzLike{nu});
  ComplexMatrix h(2, 2);
  const double r = 1 / std::sqrt(2.0);
  h << r, r, r, -r;
  Povm pm = Povm::from_basis(h);
  Vector x(1);
  x << 1.0471975511965976;
  const TolerancePolicy tol = TolerancePolicy::machine_default();
  for (auto _ : state) {
    benchmark::DoNotOptimize(attainability_study(s, pm, x, 10000, static_cast<int>(state.range(0)), 7, tol));
  }
}
BENCHMARK(BM_AttainabilityStudy)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace qcrb

BENCHMARK_MAIN();
