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

// Release acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <nlohmann/json.hpp>
#include <numbers>
#include <set>
#include <sstream>
#include <string>

#include "golden_cases.h"
#include "qcrb/bounds.h"
#include "qcrb/estimation.h"
#include "qcrb/information.h"
#include "qcrb/reduction.h"
#include "qcrb/strategy.h"
#include "test_util.h"

namespace qcrb {
namespace {

using std::numbers::pi;
using testing::Rng;

const TolerancePolicy kTol = TolerancePolicy::machine_default();

// Collects the first failure message; later failures are counted only.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (failures_++ == 0) first_ = what;
  }
  void at_most(double value, double limit, const std::string& what) {
    std::ostringstream s;
    s.precision(3);
    s << what << " = " << value << " > " << limit;
    expect(value <= limit, s.str());
  }
  bool ok() const { return failures_ == 0; }
  std::string summary() const {
    return first_ + (failures_ > 1 ? " (+" + std::to_string(failures_ - 1) + " more)" : "");
  }

 private:
  int failures_ = 0;
  std::string first_;
};

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  int i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

void criterion1(Check& c) {
  Matrix q = qfim(build_family(GhzLike{vec({1, -2})}), vec({0.3, -1.1})).matrix().matrix();
  Matrix expected(2, 2);
  expected << 1, -2, -2, 4;
  c.at_most(max_abs(q - expected), 1e-12, "ghz (1,-2) deviation");
  Rng rng(1);
  for (int t = 0; t < 10; ++t) {
    int m = 1 + t % 6;
    Vector nu = testing::random_vector(rng, m, -5, 5);
    Vector x = testing::random_vector(rng, m, -pi, pi);
    Matrix g = qfim(build_family(GhzLike{nu}), x).matrix().matrix();
    c.at_most(max_abs(g - nu * nu.transpose()), 1e-12, "random ghz deviation");
  }
}

void criterion2(Check& c) {
  Rng rng(2);
  for (int m = 1; m <= 8; ++m) {
    Vector nu = testing::random_vector(rng, m, 0.2, 4);
    if (m % 2 == 0) nu(0) = -nu(0);
    Vector x = testing::random_vector(rng, m, -pi, pi);
    InfoMatrix generic = qfim(build_family(NoonLike{nu}), x);
    InfoMatrix closed = closed_form_qfim(NoonLike{nu});
    c.at_most(max_abs(generic.matrix().matrix() - closed.matrix().matrix()), 1e-10,
              "noon generic vs closed form");
    Matrix sm = noon_qfim_inverse(nu);
    Matrix eig = pseudoinverse(closed.matrix(), kTol).matrix();
    c.at_most(max_abs(sm - eig) / std::max(1.0, max_abs(eig)), 1e-9, "Sherman-Morrison vs eig");
  }
}

void criterion3(Check& c) {
  for (int m = 2; m <= 12; ++m) {
    InfoMatrix f = closed_form_qfim(CyclicPaired{m});
    EigenDecomposition e = eig_sym(f.matrix());
    std::vector<double> expected;
    for (int k = 0; k < m; ++k) expected.push_back(2.0 / m * (1 + std::cos(2 * pi * k / m)));
    std::sort(expected.rbegin(), expected.rend());
    for (int k = 0; k < m; ++k) {
      c.at_most(std::abs(e.eigenvalues(k) - expected[k]), 1e-12,
                "cyclic m=" + std::to_string(m) + " eigenvalue");
    }
    SupportDecomposition dec = support_decomposition(f, kTol);
    c.expect(dec.full_rank() == (m % 2 == 1), "cyclic invertibility m=" + std::to_string(m));
    if (m % 2 == 0) {
      Vector alt(m);
      for (int i = 0; i < m; ++i) alt(i) = (i % 2 == 0 ? 1.0 : -1.0) / std::sqrt(double(m));
      c.expect(dec.kernel_basis.cols() == 1, "even cyclic kernel dimension");
      if (dec.kernel_basis.cols() == 1) {
        double dot = std::abs(dec.kernel_basis.col(0).dot(alt));
        c.at_most(1 - dot, 1e-10, "even cyclic kernel alignment");
      }
    }
  }
  Rng rng(3);
  for (int m = 2; m <= 8; ++m) {
    Vector nu = testing::random_vector(rng, m, 0.5, 3);
    c.expect(!support_decomposition(closed_form_qfim(GhzLike{nu}), kTol).full_rank(),
             "ghz must never be invertible");
    c.expect(support_decomposition(closed_form_qfim(NoonLike{nu}), kTol).full_rank(),
             "noon must always be invertible");
  }
}

void criterion4(Check& c) {
  Rng rng(4);
  for (int t = 0; t < 200; ++t) {
    int d = 1 + t % 8;
    int r = 1 + static_cast<int>(rng() % static_cast<unsigned>(d));
    InfoMatrix f = testing::random_info(rng, d, r);
    SupportDecomposition dec = support_decomposition(f, kTol);
    ReducedProblem red = reduce_problem(f, dec);
    Matrix fprime_inv = red.reduced_fim.matrix().inverse();
    Matrix rebuilt = dec.support_basis * fprime_inv * dec.support_basis.transpose();
    Matrix pinv = pseudoinverse(f.matrix(), kTol).matrix();
    c.at_most(max_abs(rebuilt - pinv), 1e-9, "V F'^-1 V^T - F^+");
    c.at_most(std::abs(pinv.trace() - fprime_inv.trace()), 1e-9, "Tr F^+ - Tr F'^-1");
  }
}

void criterion5(Check& c) {
  Rng rng(5);
  for (int t = 0; t < 500; ++t) {
    int d = 1 + t % 6;
    int r = 1 + static_cast<int>(rng() % static_cast<unsigned>(d));
    InfoMatrix f = testing::random_info(rng, d, r);
    Vector w = testing::random_vector(rng, d);
    // Every fourth weight is an eigenvector, where the two bounds coincide.
    if (t % 4 == 0) w = eig_sym(f.matrix()).eigenvectors.col(0);
    w = support_projector(f.matrix(), kTol).matrix() * w;
    if (w.norm() < 1e-6) continue;
    BoundReport b = compare_bounds(f, w, kTol);
    c.at_most(*b.weak_bound - b.exact_bound, 1e-10, "weak - exact");
    // The gap is quadratic in the saturation angle, so zero means rounding level.
    bool zero_gap = std::abs(*b.gap) <= 1e-12 * std::max(1.0, b.exact_bound);
    c.expect(*b.saturation ? zero_gap : *b.gap > 0, "gap zero iff saturated");
  }
  InfoMatrix ghz = closed_form_qfim(GhzLike{vec({1, -2})});
  BoundReport g = compare_bounds(ghz, vec({1.0 / 3, -2.0 / 3}), kTol);
  c.at_most(std::abs(g.exact_bound - 1.0 / 9), 1e-12, "ghz exact bound");
  c.at_most(std::abs(*g.weak_bound - 1.0 / 9), 1e-12, "ghz weak bound");
  InfoMatrix noon = closed_form_qfim(NoonLike{vec({1, 1})});
  BoundReport n = compare_bounds(noon, vec({1, 0}), kTol);
  c.at_most(std::abs(n.exact_bound - 1.5), 1e-12, "noon exact bound");
  c.at_most(std::abs(*n.weak_bound - 1.125), 1e-12, "noon weak bound");
  c.expect(*n.weak_bound < n.exact_bound, "noon weak < exact");
}

void criterion6(Check& c) {
  Rng rng(6);
  for (int t = 0; t < 50; ++t) {
    TransverseIsing m{testing::uniform(rng, 0.1, 3), testing::uniform(rng, 0.1, 3), 2 * (1 + t % 6)};
    InfoMatrix f = many_body_qfim(m);
    SupportDecomposition dec = support_decomposition(f, kTol);
    c.expect(dec.rank == 1, "ising rank 1");
    Vector vbar = dec.kernel_basis.col(0);
    c.at_most((f.matrix().matrix() * vbar).norm(), 1e-9, "|F vbar| ising");
    ConstraintFunction cf = constraint_function(dec, model_point(m));
    c.at_most(std::abs(cf.constant(0) + std::hypot(m.omega, m.g)), 1e-12, "ising constant");
  }
  for (int t = 0; t < 50; ++t) {
    XyThreeSite m{testing::uniform(rng, 0.2, 2), testing::uniform(rng, 0.2, 2),
                  testing::uniform(rng, 0.2, 2)};
    InfoMatrix f = many_body_qfim(m);
    SupportDecomposition dec = support_decomposition(f, kTol);
    c.expect(dec.rank == 1, "xy rank 1");
    // grad Omega for Omega = lambda gamma / (2h + lambda), x = (lambda, gamma).
    const double den = 2 * m.h + m.lambda;
    Vector grad = vec({2 * m.h * m.gamma / (den * den), m.lambda / den});
    c.at_most(std::abs(dec.kernel_basis.col(0).dot(grad.normalized())), 1e-9, "xy kernel . grad");
  }
}

void criterion7(Check& c) {
  Rng rng(7);
  auto check_state = [&](const LinearPhaseState& s, const std::string& name) {
    for (int t = 0; t < 20; ++t) {
      Vector x = testing::random_vector(rng, s.n_params(), -pi, pi);
      Matrix q = qfim(s, x).matrix().matrix();
      Matrix fd = qfim_fd_oracle(s, x, 1e-5).matrix().matrix();
      c.at_most(max_abs(q - fd) / std::max(1.0, max_abs(q)), 1e-7, name + " generic vs fd");
    }
  };
  check_state(build_family(GhzLike{vec({1, -2, 3})}), "ghz");
  check_state(build_family(NoonLike{vec({1, 2, 0.5})}), "noon");
  check_state(build_family(CyclicPaired{5}), "cyclic");
  CustomState custom = testing::random_custom(rng, 3, 5);
  check_state(LinearPhaseState(custom.n_params, custom.kets), "custom");
  for (int t = 0; t < 50; ++t) {
    int n_params = 1 + t % 3;
    CustomState cs = testing::random_custom(rng, n_params, 2 + t % 5);
    LinearPhaseState s(cs.n_params, cs.kets);
    Povm povm = testing::random_povm(rng, s.dim(), 2 + t % 4);
    Vector x = testing::random_vector(rng, n_params, -pi, pi);
    Matrix slack = qfim(s, x).matrix().matrix() - classical_fim(s, povm, x).matrix().matrix();
    Eigen::SelfAdjointEigenSolver<Matrix> es(slack, Eigen::EigenvaluesOnly);
    c.expect(es.eigenvalues().minCoeff() >= -1e-8, "classical FIM exceeds QFIM");
  }
}

void criterion8(Check& c) {
  EstimationRun run = attainability_study(build_family(GhzLike{vec({1})}),
                                          testing::plus_minus_povm(), vec({pi / 3}), 10000, 500, 7,
                                          kTol);
  double ratio = run.variance_ratio(0);
  c.expect(ratio >= 0.85 && ratio <= 1.15, "variance ratio " + std::to_string(ratio));
  c.expect(run.diagonal_z.minCoeff() >= -3, "covariance beats the CRB by more than 3 sigma");
}

void criterion9(Check& c) {
  std::set<std::string> branches;
  for (const testing::GoldenCase& g : testing::golden_cases()) {
    testing::CliResult a = testing::run_cli(g.args);
    testing::CliResult b = testing::run_cli(g.args);
    c.expect(a.status == 0, g.name + " exit status " + std::to_string(a.status));
    c.expect(a.out == b.out, g.name + " re-run differs");
    std::optional<std::string> stored = testing::read_file(testing::golden_path(g.name));
    c.expect(stored.has_value() && *stored == a.out, g.name + " differs from stored golden");
    if (!g.branch.empty() && a.status == 0) {
      std::string got = nlohmann::json::parse(a.out)["strategy"]["branch"];
      c.expect(got == g.branch, g.name + " branch " + got);
      branches.insert(got);
    }
  }
  c.expect(branches.size() == 5, "not all five branches covered");
}

void criterion10(Check& c) {
  std::vector<std::string> args = {"analyze", "--probe", testing::data_path("cyclic4.json"),
                                   "--provenance", "both"};
  testing::CliResult r = testing::run_cli(args);
  c.expect(r.status == 0, "analyze exit status");
  if (r.status != 0) return;
  nlohmann::json j = nlohmann::json::parse(r.out);
  bool found = false;
  for (const auto& cmp : j["comparisons"]) {
    if (cmp["candidate"] != "closed_form") continue;
    found = true;
    c.expect(cmp["kernels_shared"].get<bool>(), "kernel vector not shared");
    c.at_most(std::abs(cmp["uniform_eigenvalue_reference"].get<double>() - 1.0), 1e-10,
              "generic uniform eigenvalue - 4/m");
    c.at_most(std::abs(cmp["uniform_eigenvalue_candidate"].get<double>() - 1.0), 1e-10,
              "closed-form uniform eigenvalue - 4/m");
    c.expect(!cmp["agree"].get<bool>(), "matrices reported as agreeing");
    c.expect(cmp["max_abs_difference"].get<double>() > 0.1, "difference not reported");
    c.expect(!cmp["statement"].get<std::string>().empty(), "no discrepancy statement");
  }
  c.expect(found, "no generic vs closed-form comparison");
  args.insert(args.end(), {"--format", "text"});
  testing::CliResult t = testing::run_cli(args);
  c.expect(t.out.find("discrepancy table") != std::string::npos, "text report lacks discrepancy table");
}

struct Criterion {
  int id;
  const char* title;
  double budget_seconds;
  std::function<void(Check&)> body;
};

}  // namespace
}  // namespace qcrb

int main() {
  using namespace qcrb;
  const Criterion criteria[] = {
      {1, "ghz QFIM equals nu nu^T", 1, criterion1},
      {2, "noon QFIM closed form and Sherman-Morrison inverse", 1, criterion2},
      {3, "cyclic spectrum, kernel and invertibility table", 1, criterion3},
      {4, "pseudoinverse equals reduced inverse", 5, criterion4},
      {5, "weak bound chain and saturation", 5, criterion5},
      {6, "Ising and XY kernels and constraint constant", 1, criterion6},
      {7, "finite-difference oracle and classical FIM ordering", 30, criterion7},
      {8, "maximum likelihood attains the bound", 60, criterion8},
      {9, "strategy branch golden reports", 5, criterion9},
      {10, "generic vs closed-form cyclic discrepancy", 1, criterion10},
  };
  int failed = 0;
  for (const Criterion& cr : criteria) {
    Check check;
    auto start = std::chrono::steady_clock::now();
    try {
      cr.body(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char budget[96];
    std::snprintf(budget, sizeof budget, "runtime %.2fs exceeds %.0fs", seconds, cr.budget_seconds);
    check.expect(seconds < cr.budget_seconds, budget);
    std::printf("%s criterion %d: %s (%.3fs)%s%s\n", check.ok() ? "PASS" : "FAIL", cr.id, cr.title,
                seconds, check.ok() ? "" : ": ", check.ok() ? "" : check.summary().c_str());
    if (!check.ok()) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
