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

#pragma once

#include <span>
#include <string>
#include <vector>

#include "vqint/ansatz.hpp"
#include "vqint/benchmarks.hpp"

namespace vqint {

struct IntervalResult {
  std::string label;
  double a_phys = 0.0;
  double b_phys = 0.0;
  double predicted = 0.0;
  double reference = 0.0;
  /// |pred - ref| / |ref|, or |pred| when the reference is zero.
  double rel_error = 0.0;
  bool zero_reference = false;
};

struct MetricsReport {
  double r2 = 0.0;
  double w1 = 0.0;
  std::vector<IntervalResult> intervals;
  int grid_size = 0;
};

/// 1 - sum (f - q)^2 / (N var(f)), var with 1/N. Throws UndefinedMetric when
/// var(f) = 0 or N < 2.
double r2_score(std::span<const double> f, std::span<const double> q);

/// Cumulative sums divided by their largest magnitude. Throws UndefinedMetric
/// when every partial sum is zero.
std::vector<double> normalized_cumulative(std::span<const double> increments);

/// sum |j_true - j_pred| * dx over already-normalized cumulative arrays.
double w1_from_cumulative(std::span<const double> j_true, std::span<const double> j_pred, double dx);

/// W1 over `m` equal subintervals of [-1, 1]: reference increments from the
/// quadrature oracle, predicted increments from Q endpoint differences.
double w1_distance(const CircuitModel& model, const Benchmark& bench, int m = 30);

/// (Q(x(b)) - Q(x(a))) * jacobian / output_scale. Throws ExtrapolationError
/// for endpoints outside the domain.
double integral(const CircuitModel& model, const Benchmark& bench, double a_phys, double b_phys);

/// Relative error with the zero-reference convention of IntervalResult.
double relative_error(double predicted, double reference);

std::vector<IntervalResult> subinterval_report(const CircuitModel& model, const Benchmark& bench);

/// Midpoint grid x_i = -1 + (2i + 1) / n.
std::vector<double> evaluation_grid(int n);

struct GridData {
  std::vector<double> x, s, f, q;
};
/// f and the model's q (divided by output_scale) on the evaluation grid.
GridData grid_data(const CircuitModel& model, const Benchmark& bench, int n = 1000);

MetricsReport evaluate_metrics(const CircuitModel& model, const Benchmark& bench, int grid_size = 1000,
                               int w1_intervals = 30);

}  // namespace vqint
