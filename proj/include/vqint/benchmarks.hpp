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

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Target integrands on their physical domains, the normalization map to
// [-1, 1], and the reference-integral oracle.

namespace vqint {

struct NamedInterval {
  std::string label;
  double a = 0.0;
  double b = 0.0;
  /// Value printed in the published tables, when there is one.
  std::optional<double> published;
  /// One unit in the last printed digit of `published`.
  double published_ulp = 0.0;
};

struct Benchmark {
  std::string name;
  double s_min = -1.0;
  double s_max = 1.0;
  std::function<double(double)> f;
  std::map<std::string, double> constants;
  std::vector<NamedInterval> intervals;
  /// Training targets are f * output_scale; reported integrals divide it back
  /// out. Keeps tiny integrands (BW ~ 1e-5) in a range where the optimizer's
  /// epsilon and the bounded circuit output are not limiting.
  double output_scale = 1.0;
  /// Table rendering factor (BW tables print values in units of 1e-5).
  double display_unit = 1.0;
  /// Closed-form antiderivative difference, when the integrand has one.
  std::function<double(double, double)> exact_integral;
};

Benchmark cpf();
Benchmark step();
Benchmark breit_wigner();
/// Plug-in integrand for library users; no named intervals.
Benchmark custom_benchmark(std::string name, double s_min, double s_max, std::function<double(double)> f,
                           double output_scale = 1.0);

/// "cpf", "step", "bw" (case-insensitive). Throws InvalidConfig otherwise.
Benchmark benchmark_by_name(std::string_view name);

double evaluate(const Benchmark& bench, double s);
double normalize(const Benchmark& bench, double s);
double denormalize(const Benchmark& bench, double x);
/// ds/dx = (s_max - s_min) / 2
double jacobian(const Benchmark& bench);

/// Integral of f over [a, b] in physical units. Exact for STEP, adaptive
/// Gauss-Kronrod otherwise with absolute tolerance 1e-10 times the magnitude
/// scale (b - a) * max|f| estimated on a coarse grid.
double reference_integral(const Benchmark& bench, double a, double b);

}  // namespace vqint
