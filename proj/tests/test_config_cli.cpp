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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "vqint/config.hpp"
#include "vqint/errors.hpp"
#include "vqint/experiment.hpp"

using namespace vqint;
namespace fs = std::filesystem;

namespace {

const char* kMinimal = R"(benchmark = cpf
seed = 1

[ansatz]
kind = qnn
layers = 2

[sampler]
kind = uniform
n_train = 20

[loss]
kind = mse

[optimizer]
epochs = 10

[metrics]
grid_size = 100
)";

class Workdir : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("vqint_") + info->test_suite_name() + "_" + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  static std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }
  CliOptions out(const std::string& sub) {
    CliOptions c;
    c.out_dir = (dir_ / sub).string();
    return c;
  }

  fs::path dir_;
};

std::string field_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const InvalidConfig& e) {
    return e.field();
  }
  return "<accepted>";
}

}  // namespace

TEST(Config, ParsesMinimalAndDefaults) {
  const auto c = parse_config(kMinimal);
  EXPECT_EQ(c.benchmark, "cpf");
  EXPECT_EQ(c.seed, 1u);
  EXPECT_EQ(c.layers, 2);
  EXPECT_EQ(c.sampler.n_train, 20);
  EXPECT_EQ(c.optimizer.epochs, 10);
  EXPECT_EQ(c.optimizer.lr, 0.01);
  EXPECT_EQ(c.loss.lambda, 0.1);
  EXPECT_EQ(c.init.scale_min, 0.5);
  EXPECT_EQ(c.sweep.samplers.size(), 3u);
  EXPECT_EQ(c.sweep.losses.size(), 4u);
}

TEST(Config, ErrorsNameTheField) {
  EXPECT_EQ(field_of("seed = 1\n"), "benchmark");
  EXPECT_EQ(field_of("benchmark = cpf\n"), "seed");
  EXPECT_EQ(field_of("benchmark = gauss\nseed = 1\n"), "benchmark");
  EXPECT_EQ(field_of("benchmark = cpf\nseed = 1\n[ansatz]\nlayers = 0\n"), "ansatz.layers");
  EXPECT_EQ(field_of("benchmark = cpf\nseed = 1\n[ansatz]\nlayers = two\n"), "ansatz.layers");
  EXPECT_EQ(field_of("benchmark = cpf\nseed = 1\n[optimizer]\nlrr = 0.1\n"), "optimizer.lrr");
  EXPECT_EQ(field_of("benchmark = cpf\nseed = 1\n[noise]\nkind = bit_flip\nstrength = 1.5\n"), "noise.strength");
  EXPECT_EQ(field_of("benchmark = cpf\nseed = 1\n[loss]\nkind = huber\n"), "loss.kind");
  EXPECT_EQ(field_of("benchmark = cpf\nseed = 1\n[ansatz]\nscale_min = 3\nscale_max = 1\n"), "ansatz.scale_max");
  EXPECT_EQ(field_of("benchmark = cpf\nseed = 1\n[sampler]\nn_train = 0\n"), "sampler.n_train");
}

TEST(Config, IniRoundTrip) {
  auto c = parse_config(kMinimal);
  c.noise.kind = NoiseKind::GateError;
  c.noise.strength = 1e-3;
  c.loss.kind = LossKind::MseKL;
  c.loss.lambda = 0.37;
  c.sampler.kind = SamplerKind::HMC;
  c.sampler.hmc.uniform_mix = 0.25;
  c.optimizer.lr = 1.0 / 3.0;
  c.sweep.losses = {LossKind::Chi2};
  const auto text = to_ini(c);
  const auto back = parse_config(text);
  EXPECT_EQ(to_ini(back), text);
  EXPECT_EQ(back.optimizer.lr, c.optimizer.lr);
  EXPECT_EQ(back.loss.lambda, 0.37);
  EXPECT_EQ(back.sampler.hmc.uniform_mix, 0.25);
  EXPECT_EQ(back.noise.kind, NoiseKind::GateError);
}

TEST_F(Workdir, OutputDirPrecedence) {
  auto c = parse_config(kMinimal);
  CliOptions cli;
  ::setenv(kOutputDirEnv, "from_env", 1);
  EXPECT_EQ(resolve_output_dir(c, cli), "from_env");
  c.output_dir = "from_config";
  EXPECT_EQ(resolve_output_dir(c, cli), "from_config");
  cli.out_dir = "from_cli";
  EXPECT_EQ(resolve_output_dir(c, cli), "from_cli");
  ::unsetenv(kOutputDirEnv);
  EXPECT_EQ(resolve_output_dir(parse_config(kMinimal), CliOptions{}), "vqint-out");
}

TEST_F(Workdir, RunWritesFourFilesWithEcho) {
  const auto cfg = write("run.ini", kMinimal);
  std::ostringstream o, e;
  ASSERT_EQ(cmd_run(cfg, out("a"), o, e), kExitOk) << e.str();
  for (const char* f : {"run_record.json", "model.json", "samples.csv", "plot.csv"}) {
    ASSERT_TRUE(fs::exists(dir_ / "a" / f)) << f;
    EXPECT_NE(slurp(dir_ / "a" / f).find(tool_version()), std::string::npos) << f;
  }
  EXPECT_EQ(slurp(dir_ / "a" / "plot.csv").find("x_norm,s_phys,f,q,rel_err\n") != std::string::npos, true);
  const auto rec = nlohmann::json::parse(slurp(dir_ / "a" / "run_record.json"));
  EXPECT_EQ(rec["training"]["epochs_run"], 10);
  EXPECT_EQ(rec["config"]["benchmark"], "cpf");
  EXPECT_TRUE(rec["metrics"].is_object());
}

TEST_F(Workdir, RunIsDeterministicModuloTimestamp) {
  const auto cfg = write("run.ini", kMinimal);
  std::ostringstream o, e;
  ASSERT_EQ(cmd_run(cfg, out("a"), o, e), kExitOk);
  ASSERT_EQ(cmd_run(cfg, out("b"), o, e), kExitOk);
  auto a = nlohmann::json::parse(slurp(dir_ / "a" / "run_record.json"));
  auto b = nlohmann::json::parse(slurp(dir_ / "b" / "run_record.json"));
  a.erase("timestamp");
  b.erase("timestamp");
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_EQ(slurp(dir_ / "a" / "model.json"), slurp(dir_ / "b" / "model.json"));
  EXPECT_EQ(slurp(dir_ / "a" / "samples.csv"), slurp(dir_ / "b" / "samples.csv"));
}

TEST_F(Workdir, SeedOverrideChangesTheRun) {
  const auto cfg = write("run.ini", kMinimal);
  std::ostringstream o, e;
  auto cli = out("a");
  ASSERT_EQ(cmd_run(cfg, cli, o, e), kExitOk);
  cli = out("b");
  cli.seed_override = 2;
  ASSERT_EQ(cmd_run(cfg, cli, o, e), kExitOk);
  EXPECT_NE(slurp(dir_ / "a" / "samples.csv"), slurp(dir_ / "b" / "samples.csv"));
  const auto rec = nlohmann::json::parse(slurp(dir_ / "b" / "run_record.json"));
  EXPECT_EQ(rec["config"]["seed"], "2");
}

TEST_F(Workdir, ConfigErrorsExitTwo) {
  std::ostringstream o, e;
  EXPECT_EQ(cmd_run(write("bad.ini", "seed = 1\n"), out("a"), o, e), kExitConfig);
  EXPECT_NE(e.str().find("benchmark"), std::string::npos);
  EXPECT_EQ(cmd_run((dir_ / "missing.ini").string(), out("a"), o, e), kExitConfig);
  EXPECT_FALSE(fs::exists(dir_ / "a" / "run_record.json"));
}

TEST_F(Workdir, NumericalFailureExitsThreeWithPartialRecord) {
  const auto config = parse_config(kMinimal);
  ExperimentOutcome o = execute(config);
  o.run.status = RunStatus::NumericalFailure;
  o.run.diagnostic = "non-finite gradient at epoch 3";
  o.failure = o.run.diagnostic;
  o.numerical_failure = true;
  o.metrics.reset();
  nlohmann::json rec;
  EXPECT_EQ(write_run(config, o, (dir_ / "f").string(), &rec), kExitNumerical);
  EXPECT_TRUE(fs::exists(dir_ / "f" / "run_record.json"));
  EXPECT_FALSE(fs::exists(dir_ / "f" / "plot.csv"));
  EXPECT_EQ(rec["training"]["status"], "numerical_failure");
  EXPECT_TRUE(rec["metrics"].is_null());
}

TEST_F(Workdir, NoiseEvalRowsAndMismatch) {
  std::string text = kMinimal;
  text.replace(text.find("cpf"), 3, "bw");
  text += "\n[noise]\nstrength = 0.001\nruns = 20\n";
  const auto cfg = write("bw.ini", text);
  std::ostringstream o, e;
  ASSERT_EQ(cmd_run(cfg, out("run"), o, e), kExitOk) << e.str();
  const auto model = (dir_ / "run" / "model.json").string();
  std::ostringstream no, ne;
  ASSERT_EQ(cmd_noise_eval(cfg, model, out("noise"), no, ne), kExitOk) << ne.str();
  const std::string table = slurp(dir_ / "noise" / "noise_table.csv");
  EXPECT_NE(table.find(",none,"), std::string::npos);
  EXPECT_NE(table.find(",gate_error,"), std::string::npos);
  EXPECT_NE(table.find(",bit_flip,"), std::string::npos);
  EXPECT_NE(table.find(",depolarizing,"), std::string::npos);
  EXPECT_NE(no.str().find("7.3582"), std::string::npos);

  const auto j = nlohmann::json::parse(slurp(dir_ / "noise" / "noise_eval.json"));
  bool saw_none = false;
  for (const auto& r : j["rows"]) {
    if (r["noise"] == "none") {
      saw_none = true;
      EXPECT_EQ(r["std"], 0.0);
    } else if (r["noise"] == "gate_error") {
      EXPECT_GT(r["std"].get<double>(), 0.0);
    } else {
      EXPECT_EQ(r["std"], 0.0);
      EXPECT_EQ(r["runs"], 1);
    }
  }
  EXPECT_TRUE(saw_none);

  std::string other = text;
  other.replace(other.find("layers = 2"), 10, "layers = 3");
  std::ostringstream mo, me;
  EXPECT_EQ(cmd_noise_eval(write("mismatch.ini", other), model, out("m"), mo, me), kExitConfig);
  EXPECT_NE(me.str().find("ansatz"), std::string::npos);
}

TEST_F(Workdir, SweepTwelveRowsReproducibleRanking) {
  std::string text = kMinimal;
  text.replace(text.find("layers = 2"), 10, "layers = 1");
  text.replace(text.find("epochs = 10"), 11, "epochs = 4");
  const auto cfg = write("sweep.ini", text);
  std::ostringstream o, e;
  ASSERT_EQ(cmd_sweep(cfg, out("s1"), o, e), kExitOk) << e.str();
  auto cli = out("s2");
  cli.workers = 3;
  ASSERT_EQ(cmd_sweep(cfg, cli, o, e), kExitOk) << e.str();
  const auto a = nlohmann::json::parse(slurp(dir_ / "s1" / "sweep_summary.json"));
  const auto b = nlohmann::json::parse(slurp(dir_ / "s2" / "sweep_summary.json"));
  EXPECT_EQ(a["rows"].size(), 12u);
  EXPECT_EQ(a["best_three"], b["best_three"]);
  EXPECT_EQ(a["rows"], b["rows"]);
  std::istringstream table(slurp(dir_ / "s1" / "sweep_table.csv"));
  int data = 0;
  for (std::string line; std::getline(table, line);)
    if (!line.empty() && line[0] != '#' && line.rfind("rank,", 0) != 0) ++data;
  EXPECT_EQ(data, 12);
  EXPECT_EQ(sweep_cell_seed(1, SamplerKind::HMC, LossKind::Chi2), sweep_cell_seed(1, SamplerKind::HMC, LossKind::Chi2));
  EXPECT_NE(sweep_cell_seed(1, SamplerKind::HMC, LossKind::Chi2), sweep_cell_seed(1, SamplerKind::HMC, LossKind::MSE));
}

TEST(Sweep, RankingUsesLowestW1AmongSuccessfulRows) {
  std::vector<SweepRow> rows(5);
  const double w[] = {0.3, 0.1, 0.05, 0.2, 0.01};
  for (int i = 0; i < 5; ++i) {
    rows[i].ok = i != 4;  // the lowest W1 belongs to a failed cell
    rows[i].w1 = w[i];
  }
  rank_sweep(rows);
  EXPECT_EQ(rows[2].best_rank, 1);
  EXPECT_EQ(rows[1].best_rank, 2);
  EXPECT_EQ(rows[3].best_rank, 3);
  EXPECT_EQ(rows[0].best_rank, 0);
  EXPECT_EQ(rows[4].best_rank, 0);
}

TEST(Oracle, PrintsReferences) {
  std::ostringstream o, e;
  EXPECT_EQ(cmd_oracle("cpf", o, e), kExitOk);
  EXPECT_NE(o.str().find("1.0671"), std::string::npos);
  EXPECT_EQ(cmd_oracle("nope", o, e), kExitConfig);
}
