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
#include <optional>
#include <string>
#include <vector>

#include "vqint/ansatz.hpp"
#include "vqint/losses.hpp"
#include "vqint/noise.hpp"
#include "vqint/samplers.hpp"
#include "vqint/trainer.hpp"

// Experiment configuration: an INI file with top-level keys and sections.
//
//   benchmark = cpf          ; cpf | step | bw   (required)
//   seed = 1                 ; required, no implicit entropy
//   output_dir = out         ; optional
//
//   [ansatz]    kind, layers, scale_min, scale_max
//   [sampler]   kind, n_train, pool_factor, fd_step, hmc_steps, hmc_step_size,
//               hmc_chains, hmc_burn_in, hmc_regularization, uniform_mix
//   [loss]      kind, lambda, eps
//   [optimizer] lr, beta1, beta2, eps, epochs, batch_size
//   [noise]     kind, strength, realizations, runs, eval_kinds
//   [sweep]     samplers, losses       (comma-separated)
//   [metrics]   grid_size, w1_intervals
//
// Unknown keys are rejected so typos surface as configuration errors.

namespace vqint {

struct SamplerConfig {
  SamplerKind kind = SamplerKind::Uniform;
  int n_train = 200;
  ImportanceConfig importance;
  HmcConfig hmc;
};

struct SweepConfig {
  std::vector<SamplerKind> samplers{SamplerKind::Uniform, SamplerKind::Importance, SamplerKind::HMC};
  std::vector<LossKind> losses{LossKind::MSE, LossKind::Chi2, LossKind::LogCosh, LossKind::MseKL};
};

struct MetricsConfig {
  int grid_size = 1000;
  int w1_intervals = 30;
};

struct ExperimentConfig {
  std::string benchmark;
  std::uint64_t seed = 0;
  std::string output_dir;  ///< empty: resolved by the caller
  AnsatzKind ansatz = AnsatzKind::QNN;
  int layers = 10;
  InitRange init;
  SamplerConfig sampler;
  LossConfig loss;
  OptimizerConfig optimizer;
  NoiseConfig noise;
  /// Noise kinds evaluated by noise-eval.
  std::vector<NoiseKind> noise_eval_kinds{NoiseKind::GateError, NoiseKind::BitFlip, NoiseKind::Depolarizing};
  SweepConfig sweep;
  MetricsConfig metrics;

  /// Throws InvalidConfig naming the offending field.
  void validate() const;
};

/// Parses INI text. Throws InvalidConfig with the offending field.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Canonical INI rendering; parse_config(to_ini(c)) reproduces c.
std::string to_ini(const ExperimentConfig& config);

}  // namespace vqint
