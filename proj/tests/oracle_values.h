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

// Generated by tests/oracles/oracles.py; do not edit by hand.

#ifndef QCRB_TESTS_ORACLE_VALUES_H_
#define QCRB_TESTS_ORACLE_VALUES_H_
namespace qcrb::oracle {
inline constexpr double kIsing_1_05_N4[2][2] = {{4.5674740484429065744e-1, -9.1349480968858131488e-1}, {-9.1349480968858131488e-1, 1.8269896193771626298}};
inline constexpr double kIsing_07_13_N6[2][2] = {{1.5443114893252687156, -8.3155234040591392377e-1}, {-8.3155234040591392377e-1, 4.4775895252626134357e-1}};
inline constexpr double kXy_1_05_1[2][2] = {{3.1558185404339250493e-2, 9.4674556213017751479e-2}, {9.4674556213017751479e-2, 2.8402366863905325444e-1}};
inline constexpr double kXy_08_12_03[2][2] = {{6.9665761451359709383e-2, 1.0836896225767065904e-1}, {1.0836896225767065904e-1, 1.6857394128970991406e-1}};
inline constexpr double kNoonQfim_1_m2_05[3][3] = {{7.5e-1, 5.0e-1, -1.25e-1}, {5.0e-1, 3.0, 2.5e-1}, {-1.25e-1, 2.5e-1, 1.875e-1}};
inline constexpr double kNoonInverse_1_m2_05[3][3] = {{2.0, -5.0e-1, 2.0}, {-5.0e-1, 5.0e-1, -1.0}, {2.0, -1.0, 8.0}};
inline constexpr double kCyclicGeneric_m4[4][4] = {{7.5e-1, 2.5e-1, -2.5e-1, 2.5e-1}, {2.5e-1, 7.5e-1, 2.5e-1, -2.5e-1}, {-2.5e-1, 2.5e-1, 7.5e-1, 2.5e-1}, {2.5e-1, -2.5e-1, 2.5e-1, 7.5e-1}};
inline constexpr double kCyclicGeneric_m3[3][3] = {{8.8888888888888888889e-1, 2.2222222222222222222e-1, 2.2222222222222222222e-1}, {2.2222222222222222222e-1, 8.8888888888888888889e-1, 2.2222222222222222222e-1}, {2.2222222222222222222e-1, 2.2222222222222222222e-1, 8.8888888888888888889e-1}};
inline constexpr double kNoonDftFim_11[2][2] = {{7.5272899704196599561e-3, -4.5141335325463959533e-2}, {-4.5141335325463959533e-2, 7.0756904927473003545e-1}};
inline constexpr double kGhzPlusMinusFim_pi3 = 1.0;
}  // namespace qcrb::oracle
#endif  // QCRB_TESTS_ORACLE_VALUES_H_
