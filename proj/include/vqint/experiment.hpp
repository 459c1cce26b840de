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

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vqint/benchmarks.hpp"
#include "vqint/config.hpp"
#include "vqint/metrics.hpp"
#include "vqint/trainer.hpp"

// Experiment runner behind the command-line tool. Each command returns the
// process exit code: 0 success, 2 configuration error, 3 numerical failure.

namespace vqint {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

std::string tool_version();

/// Environment variable naming the default output directory.
constexpr const char* kOutputDirEnv = "VQINT_OUTPUT_DIR";

struct CliOptions {
  std::optional<std::string> out_dir;  ///< --out, wins over everything
  std::optional<std::uint64_t> seed_override;
  int workers = 1;
};

/// --out, then the config's output_dir, then $VQINT_OUTPUT_DIR, then "vqint-out".
std::string resolve_output_dir(const ExperimentConfig& config, const CliOptions& cli);

/// Everything one sample -> train -> metrics pass produced.
struct ExperimentOutcome {
  SampleSet samples;
  TrainingRun run;
  std::optional<MetricsReport> metrics;
  std::string failure;  ///< non-empty when the run could not finish
  bool numerical_failure = false;
};

ExperimentOutcome execute(const ExperimentConfig& config);

/// Run record; nondeterministic fields live under "timestamp".
nlohmann::json run_record(const ExperimentConfig& config, const ExperimentOutcome& outcome);

/// Columns x_norm,s_phys,f,q,rel_err on the evaluation grid.
std::string plot_csv(const CircuitModel& model, const Benchmark& bench, int grid_size, const std::string& echo);

/// Writes run_record.json, model.json, samples.csv, plot.csv into `dir`.
int write_run(const ExperimentConfig& config, const ExperimentOutcome& outcome, const std::string& dir,
              nlohmann::json* record_out = nullptr);

int cmd_run(const std::string& config_path, const CliOptions& cli, std::ostream& out, std::ostream& err);
int cmd_sweep(const std::string& config_path, const CliOptions& cli, std::ostream& out, std::ostream& err);
int cmd_noise_eval(const std::string& config_path, const std::string& model_path, const CliOptions& cli,
                   std::ostream& out, std::ostream& err);
/// Reference integrals of one benchmark (or all when empty).
int cmd_oracle(const std::string& benchmark, std::ostream& out, std::ostream& err);

/// Per-cell seed of a sweep: hash of (master seed, sampler, loss).
std::uint64_t sweep_cell_seed(std::uint64_t master, SamplerKind sampler, LossKind loss);

struct SweepRow {
  SamplerKind sampler;
  LossKind loss;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string status;
  double r2 = 0.0;
  double w1 = 0.0;
  std::vector<IntervalResult> intervals;
  int best_rank = 0;  ///< 1..3 for the three lowest W1, else 0
};

/// Marks best_rank on the three successful rows with the lowest W1 (ties by
/// row order).
void rank_sweep(std::vector<SweepRow>& rows);

}  // namespace vqint
