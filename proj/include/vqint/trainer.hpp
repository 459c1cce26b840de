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
#include <span>
#include <string>
#include <vector>

#include "vqint/ansatz.hpp"
#include "vqint/losses.hpp"
#include "vqint/noise.hpp"
#include "vqint/samplers.hpp"

namespace vqint {

struct OptimizerConfig {
  double lr = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  int epochs = 2000;
  int batch_size = 0;  ///< 0 = full batch

  void validate() const;
};

struct AdamState {
  std::vector<double> m;
  std::vector<double> v;
  long t = 0;
  double lr = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;

  static AdamState fresh(std::size_t n, const OptimizerConfig& cfg);
};

/// One bias-corrected Adam update in place. Throws NumericalError on a
/// non-finite gradient and InvalidInput on a length mismatch.
void adam_step(std::vector<double>& params, std::span<const double> grads, AdamState& state);

enum class RunStatus { Completed, Diverged, NumericalFailure };
std::string to_string(RunStatus status);

struct TrainingRun {
  CircuitModel model;            ///< best-loss parameters
  std::vector<double> history;   ///< history[i]: loss at the parameters before step i
  double initial_loss = 0.0;
  double best_loss = 0.0;
  int best_epoch = -1;           ///< index into history; -1 when no epoch ran
  RunStatus status = RunStatus::Completed;
  std::string diagnostic;
  double wall_time_s = 0.0;
};

struct TrainOptions {
  LossConfig loss;
  OptimizerConfig optimizer;
  NoiseConfig noise;
  /// Targets are multiplied by this before fitting (see Benchmark::output_scale).
  double target_scale = 1.0;
};

/// Loss and flat-parameter gradient over one batch, averaged over noise
/// realizations `offsets` (empty: one noiseless pass).
struct BatchObjective {
  double loss = 0.0;
  std::vector<double> gradient;
};
BatchObjective batch_objective(const CircuitModel& model, std::span<const double> xs, std::span<const double> targets,
                               const LossConfig& loss, const ModelNoise& noise);

TrainingRun train(const CircuitModel& model, const SampleSet& samples, const LossConfig& loss,
                  const OptimizerConfig& opt, std::uint64_t seed, double target_scale = 1.0);

TrainingRun train_noise_aware(const CircuitModel& model, const SampleSet& samples, const LossConfig& loss,
                              const OptimizerConfig& opt, const NoiseConfig& noise, std::uint64_t seed,
                              double target_scale = 1.0);

}  // namespace vqint
