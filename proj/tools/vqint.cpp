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

// Command-line front end: run, sweep, noise-eval, oracle, version.

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include <iostream>
#include <optional>
#include <string>

#include "vqint/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Antiderivative learning with variational quantum circuits"};
  app.require_subcommand(1);
  app.set_version_flag("--version", vqint::tool_version());

  std::string config_path;
  std::string out_dir;
  std::string model_path;
  std::string benchmark;
  std::uint64_t seed_override = 0;
  int workers = 1;
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "Debug logging on stderr");

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", config_path, "Experiment INI file")->required()->check(CLI::ExistingFile);
    sub->add_option("-o,--out", out_dir, "Output directory (overrides config and $VQINT_OUTPUT_DIR)");
    sub->add_option("--seed-override", seed_override, "Replace the config seed");
  };

  auto* run = app.add_subcommand("run", "Sample, train and evaluate one configuration");
  add_common(run);
  auto* sweep = app.add_subcommand("sweep", "Sampler x loss grid with a best-three ranking");
  add_common(sweep);
  sweep->add_option("-w,--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  auto* noise = app.add_subcommand("noise-eval", "Integral of a trained model under each noise kind");
  add_common(noise);
  noise->add_option("-m,--model", model_path, "model.json written by run")->required()->check(CLI::ExistingFile);
  auto* oracle = app.add_subcommand("oracle", "Print reference integrals");
  oracle->add_option("benchmark", benchmark, "cpf, step or bw (default: all)");
  auto* version = app.add_subcommand("version", "Print the tool version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    // argument errors count as configuration errors
    return code == 0 ? 0 : vqint::kExitConfig;
  }

  spdlog::set_default_logger(spdlog::default_logger()->clone("vqint"));
  spdlog::set_level(verbose ? spdlog::level::debug : spdlog::level::warn);

  vqint::CliOptions cli;
  if (!out_dir.empty()) cli.out_dir = out_dir;
  for (auto* sub : {run, sweep, noise}) {
    if (sub->count("--seed-override")) cli.seed_override = seed_override;
  }
  cli.workers = workers;

  if (*run) return vqint::cmd_run(config_path, cli, std::cout, std::cerr);
  if (*sweep) return vqint::cmd_sweep(config_path, cli, std::cout, std::cerr);
  if (*noise) return vqint::cmd_noise_eval(config_path, model_path, cli, std::cout, std::cerr);
  if (*oracle) return vqint::cmd_oracle(benchmark, std::cout, std::cerr);
  if (*version) {
    std::cout << "vqint " << vqint::tool_version() << '\n';
    return 0;
  }
  return vqint::kExitConfig;
}
