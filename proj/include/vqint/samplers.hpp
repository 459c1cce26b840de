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

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

// Training abscissae in normalized coordinates. The integrand passed in is
// the target as a function of x_norm, i.e. f(denormalize(x)).

namespace vqint {

enum class SamplerKind { Uniform, Importance, HMC };

std::string to_string(SamplerKind kind);
/// "uniform", "is", "hmc" (case-insensitive).
SamplerKind parse_sampler_kind(std::string_view text);

using Integrand = std::function<double(double)>;

struct SampleSet {
  std::vector<double> points;
  std::vector<double> targets;
  SamplerKind sampler = SamplerKind::Uniform;
  std::uint64_t seed = 0;
  /// Free-form settings echo, written into the CSV header.
  std::string settings;
};

struct HmcConfig {
  int steps = 20;
  double step_size = 0.1;
  int chains = 8;
  double uniform_mix = 0.5;
  int burn_in = 50;
  double regularization = 1e-8;  ///< added to |f| inside the log
  double fd_step = 1e-4;

  void validate() const;
};

struct ImportanceConfig {
  int pool_factor = 10;  ///< N_pool = pool_factor * N
  double fd_step = 1e-4;

  void validate() const;
};

SampleSet sample_uniform(const Integrand& f, int n, std::uint64_t seed);

/// Draws `n_pool` uniform candidates, weights them by the squared central
/// difference of f, and resamples `n` with replacement.
SampleSet sample_importance(const Integrand& f, int n_pool, int n, std::uint64_t seed, double fd_step = 1e-4);

/// HMC points and round(uniform_mix * n) uniform points, HMC first.
SampleSet sample_hmc(const Integrand& f, int n, std::uint64_t seed, const HmcConfig& cfg = {});

/// The chain output alone (no uniform mixing), `n` points in chain order.
struct HmcDiagnostics {
  std::vector<double> points;
  long proposals = 0;
  long accepted = 0;
  int stuck_chains = 0;
};
HmcDiagnostics hmc_chains(const Integrand& f, int n, std::uint64_t seed, const HmcConfig& cfg);

/// Metropolis acceptance min(1, exp(-dH)).
double acceptance_probability(double delta_h);

/// Two-column CSV (x_norm,target) preceded by '#' comment lines.
std::string to_csv(const SampleSet& samples, std::string_view header_comment = {});

}  // namespace vqint
