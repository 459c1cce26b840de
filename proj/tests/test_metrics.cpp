// Copyright 2026 The vqint Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "vqint/ansatz.hpp"
#include "vqint/benchmarks.hpp"
#include "vqint/errors.hpp"
#include "vqint/gradients.hpp"
#include "vqint/metrics.hpp"

using namespace vqint;

namespace {

// QSP, one layer, zero phases: Q(x) = 1 + x, so dQ/dx = 1 everywhere
CircuitModel unit_slope() {
  auto m = build(AnsatzKind::QSP, 1, 1);
  std::fill(m.theta.begin(), m.theta.end(), 0.0);
  return m;
}

}  // namespace

TEST(R2, Examples) {
  const std::vector<double> f{1.0, 3.0, -2.0, 0.5};
  EXPECT_EQ(r2_score(f, f), 1.0);
  const std::vector<double> mean(4, 0.625);
  EXPECT_NEAR(r2_score(f, mean), 0.0, 1e-15);
  const std::vector<double> flat(4, 2.0);
  EXPECT_THROW(r2_score(flat, f), UndefinedMetric);
  EXPECT_THROW(r2_score(std::vector<double>{1.0}, std::vector<double>{1.0}), UndefinedMetric);
}

TEST(R2, MatchesRecomputation) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g(0, 1);
  std::vector<double> f(50), q(50);
  for (int i = 0; i < 50; ++i) f[i] = g(rng), q[i] = f[i] + 0.3 * g(rng);
  long double mf = 0;
  for (double v : f) mf += v;
  mf /= 50;
  long double ss_tot = 0, ss_res = 0;
  for (int i = 0; i < 50; ++i) ss_tot += (f[i] - mf) * (f[i] - mf), ss_res += (f[i] - q[i]) * (long double)(f[i] - q[i]);
  const double expect = static_cast<double>(1 - ss_res / ss_tot);
  EXPECT_NEAR(r2_score(f, q) / expect, 1.0, 1e-14);
}

TEST(R2, OracleAgainstItself) {
  const auto b = cpf();
  std::vector<double> f;
  for (double x : evaluation_grid(1000)) f.push_back(evaluate(b, denormalize(b, x)));
  EXPECT_EQ(r2_score(f, f), 1.0);
}

TEST(W1, HandComputedCase) {
  const std::vector<double> jt{1.0 / 3, 2.0 / 3, 1.0}, jp{0.0, 0.5, 1.0};
  EXPECT_NEAR(w1_from_cumulative(jt, jp, 2.0 / 3), 1.0 / 3, 1e-15);
  EXPECT_EQ(w1_from_cumulative(jt, jt, 2.0 / 3), 0.0);
  EXPECT_THROW(w1_from_cumulative(jt, std::vector<double>{1.0}, 0.1), InvalidInput);
}

TEST(W1, NormalizedCumulativeAndScaleInvariance) {
  const auto j = normalized_cumulative(std::vector<double>{1.0, 1.0, 2.0});
  EXPECT_EQ(j, (std::vector<double>{0.25, 0.5, 1.0}));
  // all-negative partial sums normalize by magnitude
  const auto n = normalized_cumulative(std::vector<double>{-1.0, -1.0, 1.0});
  EXPECT_EQ(n, (std::vector<double>{-0.5, -1.0, -0.5}));
  EXPECT_THROW(normalized_cumulative(std::vector<double>{0.0, 0.0}), UndefinedMetric);

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1, 2);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> a(30), b(30);
    for (int i = 0; i < 30; ++i) a[i] = u(rng), b[i] = u(rng);
    const double w = w1_from_cumulative(normalized_cumulative(a), normalized_cumulative(b), 2.0 / 30);
    for (double& v : a) v *= 3.7;
    for (double& v : b) v *= 3.7;
    EXPECT_NEAR(w1_from_cumulative(normalized_cumulative(a), normalized_cumulative(b), 2.0 / 30), w, 1e-12);
  }
}

TEST(W1, ExactModelGivesZero) {
  const auto b = custom_benchmark("flat", 0.0, 4.0, [](double) { return 1.0; });
  // QSP stops 1e-6 short of the domain edge, hence the loose bound
  EXPECT_NEAR(w1_distance(unit_slope(), b, 30), 0.0, 1e-4);
  EXPECT_THROW(w1_distance(unit_slope(), b, 0), InvalidConfig);
}

TEST(Integral, LinearAntiderivativeAndEdgeCases) {
  const auto b = custom_benchmark("flat", 0.0, 4.0, [](double) { return 1.0; });
  const auto m = unit_slope();
  EXPECT_EQ(integral(m, b, 1.5, 1.5), 0.0);
  EXPECT_NEAR(integral(m, b, 0.5, 3.0), 2.5, 1e-12);
  EXPECT_THROW(integral(m, b, -0.1, 1.0), ExtrapolationError);
  EXPECT_THROW(integral(m, b, 1.0, 4.1), ExtrapolationError);
}

TEST(Integral, Additivity) {
  const auto b = breit_wigner();
  const auto m = build(AnsatzKind::DQC1, 3, 17);
  const double ac = integral(m, b, 70.0, 110.0);
  EXPECT_NEAR(ac, integral(m, b, 70.0, 91.0) + integral(m, b, 91.0, 110.0), 1e-12 * std::max(1.0, std::abs(ac)));
}

TEST(RelativeError, ZeroReferenceConvention) {
  EXPECT_NEAR(relative_error(1.1, 1.0), 0.1, 1e-15);
  EXPECT_EQ(relative_error(-0.02, 0.0), 0.02);
}

TEST(SubintervalReport, ReferencesAndZeroIntervals) {
  const auto m = build(AnsatzKind::QNN, 2, 1);
  const auto r = subinterval_report(m, cpf());
  ASSERT_EQ(r.size(), 3u);
  EXPECT_NEAR(r[0].reference, 1.0671, 1e-4);
  EXPECT_NEAR(r[1].reference, 2.1342, 1e-4);
  EXPECT_TRUE(r[2].zero_reference);
  EXPECT_EQ(r[2].rel_error, std::abs(r[2].predicted));
  const auto s = subinterval_report(m, step());
  EXPECT_EQ(s[0].reference, 0.25);
  EXPECT_EQ(s[1].reference, -0.25);
  EXPECT_TRUE(s[2].zero_reference);
  const auto w = subinterval_report(m, breit_wigner());
  ASSERT_EQ(w.size(), 3u);
  EXPECT_GT(w[0].reference, 6.7e-5);
}

TEST(Grid, MidpointsAndScaling) {
  EXPECT_EQ(evaluation_grid(4), (std::vector<double>{-0.75, -0.25, 0.25, 0.75}));
  EXPECT_EQ(evaluation_grid(1000).size(), 1000u);
  EXPECT_THROW(evaluation_grid(1), InvalidConfig);
  const auto b = breit_wigner();
  const auto m = build(AnsatzKind::QNN, 2, 3);
  const auto g = grid_data(m, b, 10);
  for (std::size_t i = 0; i < g.x.size(); ++i) {
    EXPECT_EQ(g.f[i], evaluate(b, g.s[i]));
    EXPECT_NEAR(g.q[i], input_derivative(m, g.x[i]) / b.output_scale, 1e-18);
  }
}

TEST(Report, EvaluateMetricsBundles) {
  const auto m = build(AnsatzKind::QNN, 2, 3);
  const auto r = evaluate_metrics(m, cpf(), 200, 30);
  EXPECT_EQ(r.grid_size, 200);
  EXPECT_EQ(r.intervals.size(), 3u);
  EXPECT_LE(r.r2, 1.0);
  EXPECT_GE(r.w1, 0.0);
}
