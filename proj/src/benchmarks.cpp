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

#include "vqint/benchmarks.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

#include "vqint/errors.hpp"
#include "vqint/quadrature.hpp"

namespace vqint {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

Benchmark cpf() {
  Benchmark b;
  b.name = "cpf";
  b.s_min = -2 * kPi;
  b.s_max = 2 * kPi;
  b.f = [](double s) { return std::cos(s + 0.5 * std::sin(4 * s)); };
  b.intervals = {
      {"[0,pi/2]", 0.0, kPi / 2, 1.0671, 1e-4},
      {"[-pi/2,pi/2]", -kPi / 2, kPi / 2, 2.1342, 1e-4},
      {"[-pi,pi]", -kPi, kPi, 0.0, 0.0},
  };
  return b;
}

Benchmark step() {
  Benchmark b;
  b.name = "step";
  b.s_min = -1.0;
  b.s_max = 1.0;
  b.f = [](double s) { return s >= 0.0 ? 0.5 : -0.5; };
  b.exact_integral = [](double lo, double hi) {
    // antiderivative 0.5 |s|
    return 0.5 * std::abs(hi) - 0.5 * std::abs(lo);
  };
  b.intervals = {
      {"[0,0.5]", 0.0, 0.5, 0.25, 1e-2},
      {"[-0.5,0]", -0.5, 0.0, -0.25, 1e-2},
      {"[-0.5,0.5]", -0.5, 0.5, 0.0, 0.0},
  };
  return b;
}

Benchmark breit_wigner() {
  constexpr double m = 91.1876, g = 2.4952;
  Benchmark b;
  b.name = "bw";
  b.s_min = 60.0;
  b.s_max = 120.0;
  b.constants = {{"M_Z", m}, {"Gamma", g}};
  b.f = [](double s) {
    const double d = s * s - m * m;
    return 1.0 / (d * d + m * m * g * g);
  };
  b.intervals = {
      {"[MZ-3G,MZ+3G]", m - 3 * g, m + 3 * g, 6.7924e-5, 1e-9},
      {"[MZ-5G,MZ+5G]", m - 5 * g, m + 5 * g, 7.1113e-5, 1e-9},
      {"[MZ-10G,MZ+10G]", m - 10 * g, m + 10 * g, 7.3582e-5, 1e-9},
  };
  b.output_scale = 1e5;
  b.display_unit = 1e-5;
  return b;
}

Benchmark custom_benchmark(std::string name, double s_min, double s_max, std::function<double(double)> f,
                           double output_scale) {
  if (!(s_min < s_max)) throw InvalidConfig("domain must satisfy s_min < s_max", "benchmark");
  if (!f) throw InvalidConfig("integrand is empty", "benchmark");
  Benchmark b;
  b.name = std::move(name);
  b.s_min = s_min;
  b.s_max = s_max;
  b.f = std::move(f);
  b.output_scale = output_scale;
  return b;
}

Benchmark benchmark_by_name(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "cpf") return cpf();
  if (lower == "step") return step();
  if (lower == "bw" || lower == "breit-wigner") return breit_wigner();
  throw InvalidConfig("unknown benchmark '" + std::string(name) + "' (expected cpf, step or bw)", "benchmark");
}

double evaluate(const Benchmark& bench, double s) { return bench.f(s); }

double normalize(const Benchmark& bench, double s) {
  return (2.0 * s - (bench.s_max + bench.s_min)) / (bench.s_max - bench.s_min);
}

double denormalize(const Benchmark& bench, double x) {
  return 0.5 * (bench.s_max + bench.s_min) + 0.5 * x * (bench.s_max - bench.s_min);
}

double jacobian(const Benchmark& bench) { return 0.5 * (bench.s_max - bench.s_min); }

double reference_integral(const Benchmark& bench, double a, double b) {
  if (bench.exact_integral) return bench.exact_integral(a, b);
  double peak = 0.0;
  constexpr int kProbe = 257;
  for (int i = 0; i < kProbe; ++i) {
    const double s = a + (b - a) * i / (kProbe - 1);
    peak = std::max(peak, std::abs(bench.f(s)));
  }
  const double scale = std::abs(b - a) * peak;
  if (scale == 0.0) return 0.0;
  return integrate_adaptive(bench.f, a, b, 1e-10 * scale).value;
}

}  // namespace vqint
