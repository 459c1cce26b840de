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

#include "vqint/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "vqint/errors.hpp"

namespace vqint {

double r2_score(std::span<const double> f, std::span<const double> q) {
  if (f.size() != q.size()) throw InvalidInput("R2 inputs differ in length");
  if (f.size() < 2) throw UndefinedMetric("R2 needs at least two points");
  const double n = static_cast<double>(f.size());
  double mean = 0.0;
  for (double v : f) mean += v;
  mean /= n;
  double var = 0.0, resid = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    var += (f[i] - mean) * (f[i] - mean);
    resid += (f[i] - q[i]) * (f[i] - q[i]);
  }
  var /= n;
  if (!(var > 0.0)) throw UndefinedMetric("R2 is undefined for a constant target");
  return 1.0 - resid / (n * var);
}

std::vector<double> normalized_cumulative(std::span<const double> increments) {
  std::vector<double> j(increments.size());
  double run = 0.0, top = 0.0;
  for (std::size_t i = 0; i < increments.size(); ++i) {
    run += increments[i];
    j[i] = run;
    top = std::max(top, std::abs(run));
  }
  // STEP's partial sums are all <= 0, so normalize by magnitude, not by the signed maximum
  if (!(top > 0.0)) throw UndefinedMetric("cumulative integral is identically zero");
  for (double& v : j) v /= top;
  return j;
}

double w1_from_cumulative(std::span<const double> j_true, std::span<const double> j_pred, double dx) {
  if (j_true.size() != j_pred.size()) throw InvalidInput("cumulative arrays differ in length");
  double w = 0.0;
  for (std::size_t i = 0; i < j_true.size(); ++i) w += std::abs(j_true[i] - j_pred[i]) * dx;
  return w;
}

double w1_distance(const CircuitModel& model, const Benchmark& bench, int m) {
  if (m < 1) throw InvalidConfig("must be >= 1", "metrics.w1_intervals");
  std::vector<double> ref(static_cast<std::size_t>(m)), pred(static_cast<std::size_t>(m));
  const double dx = 2.0 / m;
  double q_prev = model_jet(model, clamp_to_domain(model.kind, -1.0)).value;
  for (int k = 0; k < m; ++k) {
    const double x0 = -1.0 + k * dx;
    const double x1 = k + 1 == m ? 1.0 : -1.0 + (k + 1) * dx;
    ref[static_cast<std::size_t>(k)] = reference_integral(bench, denormalize(bench, x0), denormalize(bench, x1));
    const double q_next = model_jet(model, clamp_to_domain(model.kind, x1)).value;
    pred[static_cast<std::size_t>(k)] = (q_next - q_prev) * jacobian(bench) / bench.output_scale;
    q_prev = q_next;
  }
  return w1_from_cumulative(normalized_cumulative(ref), normalized_cumulative(pred), dx);
}

double integral(const CircuitModel& model, const Benchmark& bench, double a_phys, double b_phys) {
  for (double s : {a_phys, b_phys}) {
    if (!(s >= bench.s_min && s <= bench.s_max)) {
      throw ExtrapolationError("endpoint " + std::to_string(s) + " lies outside the training domain [" +
                               std::to_string(bench.s_min) + ", " + std::to_string(bench.s_max) + "]");
    }
  }
  if (a_phys == b_phys) return 0.0;
  const double xa = clamp_to_domain(model.kind, normalize(bench, a_phys));
  const double xb = clamp_to_domain(model.kind, normalize(bench, b_phys));
  return (model_jet(model, xb).value - model_jet(model, xa).value) * jacobian(bench) / bench.output_scale;
}

double relative_error(double predicted, double reference) {
  if (reference == 0.0) return std::abs(predicted);
  return std::abs(predicted - reference) / std::abs(reference);
}

std::vector<IntervalResult> subinterval_report(const CircuitModel& model, const Benchmark& bench) {
  std::vector<IntervalResult> out;
  for (const auto& iv : bench.intervals) {
    IntervalResult r;
    r.label = iv.label;
    r.a_phys = iv.a;
    r.b_phys = iv.b;
    r.predicted = integral(model, bench, iv.a, iv.b);
    r.reference = reference_integral(bench, iv.a, iv.b);
    // symmetric-cancellation intervals come out at rounding level; treat as exact zeros
    r.zero_reference = iv.published && *iv.published == 0.0;
    if (r.zero_reference) r.reference = 0.0;
    r.rel_error = relative_error(r.predicted, r.reference);
    out.push_back(r);
  }
  return out;
}

std::vector<double> evaluation_grid(int n) {
  if (n < 2) throw InvalidConfig("must be >= 2", "metrics.grid_size");
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = -1.0 + (2.0 * i + 1.0) / n;
  return x;
}

GridData grid_data(const CircuitModel& model, const Benchmark& bench, int n) {
  GridData g;
  g.x = evaluation_grid(n);
  for (double x : g.x) {
    const double s = denormalize(bench, x);
    g.s.push_back(s);
    g.f.push_back(bench.f(s));
    g.q.push_back(model_jet(model, clamp_to_domain(model.kind, x)).slope / bench.output_scale);
  }
  return g;
}

MetricsReport evaluate_metrics(const CircuitModel& model, const Benchmark& bench, int grid_size, int w1_intervals) {
  MetricsReport r;
  const GridData g = grid_data(model, bench, grid_size);
  r.grid_size = grid_size;
  r.r2 = r2_score(g.f, g.q);
  r.w1 = w1_distance(model, bench, w1_intervals);
  r.intervals = subinterval_report(model, bench);
  return r;
}

}  // namespace vqint
