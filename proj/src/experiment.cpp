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

#include "vqint/experiment.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "vqint/errors.hpp"
#include "vqint/seeding.hpp"

#ifndef VQINT_VERSION
#define VQINT_VERSION "0.0.0"
#endif

namespace vqint {

namespace fs = std::filesystem;

namespace {

constexpr const char* kRecordFormat = "vqint-run/1";
constexpr const char* kSweepFormat = "vqint-sweep/1";
constexpr const char* kNoiseFormat = "vqint-noise-eval/1";
// Strength used by noise-eval when the config leaves it at zero.
constexpr double kDefaultEvalStrength = 1e-3;

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string num(double v) {
  std::ostringstream o;
  o << std::setprecision(17) << v;
  return o.str();
}

// Every '#' line of a CSV preamble: tool version and the canonical config.
std::string echo_text(const ExperimentConfig& config) {
  return "vqint " + tool_version() + "\n" + to_ini(config);
}

std::string commented(const std::string& text) {
  std::ostringstream out;
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) out << "# " << line << '\n';
  return out.str();
}

// INI text -> {"key": "value", "section": {...}} so the record is queryable.
nlohmann::json config_json(const ExperimentConfig& config) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in(to_ini(config));
  pt::ini_parser::read_ini(in, tree);
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [key, child] : tree) {
    if (child.empty()) {
      j[key] = child.data();
      continue;
    }
    nlohmann::json sec = nlohmann::json::object();
    for (const auto& [k, v] : child) sec[k] = v.data();
    j[key] = sec;
  }
  return j;
}

nlohmann::json interval_json(const IntervalResult& r, const Benchmark& bench) {
  nlohmann::json j{{"label", r.label},          {"a", r.a_phys},
                   {"b", r.b_phys},             {"predicted", r.predicted},
                   {"reference", r.reference},  {"rel_error", r.rel_error},
                   {"zero_reference", r.zero_reference}};
  for (const auto& iv : bench.intervals) {
    if (iv.label == r.label && iv.published) j["published"] = *iv.published;
  }
  return j;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidConfig("cannot write '" + path.string() + "'", "output_dir");
  out << text;
  if (!out) throw InvalidConfig("write failed for '" + path.string() + "'", "output_dir");
}

void make_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InvalidConfig("cannot create '" + dir.string() + "': " + ec.message(), "output_dir");
}

SampleSet draw_samples(const ExperimentConfig& c, const Benchmark& bench) {
  const Integrand f = [&bench](double x) { return evaluate(bench, denormalize(bench, x)); };
  const std::uint64_t seed = derive_seed(c.seed, {fnv1a("samples")});
  const int n = c.sampler.n_train;
  switch (c.sampler.kind) {
    case SamplerKind::Uniform:
      return sample_uniform(f, n, seed);
    case SamplerKind::Importance:
      return sample_importance(f, c.sampler.importance.pool_factor * n, n, seed, c.sampler.importance.fd_step);
    case SamplerKind::HMC:
      return sample_hmc(f, n, seed, c.sampler.hmc);
  }
  throw InvalidConfig("unknown sampler", "sampler.kind");
}

ExperimentConfig with_overrides(ExperimentConfig c, const CliOptions& cli) {
  if (cli.seed_override) c.seed = *cli.seed_override;
  return c;
}

// Shared error funnel of the commands.
template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const InvalidConfig& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidInput& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace

std::string tool_version() { return VQINT_VERSION; }

std::string resolve_output_dir(const ExperimentConfig& config, const CliOptions& cli) {
  if (cli.out_dir && !cli.out_dir->empty()) return *cli.out_dir;
  if (!config.output_dir.empty()) return config.output_dir;
  if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') return env;
  return "vqint-out";
}

std::uint64_t sweep_cell_seed(std::uint64_t master, SamplerKind sampler, LossKind loss) {
  return derive_seed(master, {fnv1a(to_string(sampler)), fnv1a(to_string(loss))});
}

ExperimentOutcome execute(const ExperimentConfig& config) {
  config.validate();
  const Benchmark bench = benchmark_by_name(config.benchmark);
  ExperimentOutcome out;
  out.samples = draw_samples(config, bench);
  const CircuitModel init = build(config.ansatz, config.layers, config.seed, config.init);
  try {
    out.run = config.noise.inert()
                  ? train(init, out.samples, config.loss, config.optimizer, config.seed, bench.output_scale)
                  : train_noise_aware(init, out.samples, config.loss, config.optimizer, config.noise, config.seed,
                                      bench.output_scale);
  } catch (const NumericalError& e) {
    out.run.model = init;
    out.run.status = RunStatus::NumericalFailure;
    out.run.diagnostic = e.what();
  }
  if (out.run.status != RunStatus::Completed) {
    out.failure = out.run.diagnostic.empty() ? to_string(out.run.status) : out.run.diagnostic;
    out.numerical_failure = true;
    return out;
  }
  try {
    out.metrics = evaluate_metrics(out.run.model, bench, config.metrics.grid_size, config.metrics.w1_intervals);
  } catch (const InvalidConfig&) {
    throw;
  } catch (const Error& e) {
    out.failure = std::string("metrics: ") + e.what();
    out.numerical_failure = true;
  }
  return out;
}

nlohmann::json run_record(const ExperimentConfig& config, const ExperimentOutcome& o) {
  const Benchmark bench = benchmark_by_name(config.benchmark);
  nlohmann::json j;
  j["format"] = kRecordFormat;
  j["tool_version"] = tool_version();
  j["config"] = config_json(config);
  j["samples"] = {{"sampler", to_string(o.samples.sampler)},
                  {"seed", o.samples.seed},
                  {"n", o.samples.points.size()},
                  {"settings", o.samples.settings}};
  j["training"] = {{"status", to_string(o.run.status)},
                   {"diagnostic", o.run.diagnostic},
                   {"epochs_run", o.run.history.size()},
                   {"initial_loss", o.run.initial_loss},
                   {"best_loss", o.run.best_loss},
                   {"best_epoch", o.run.best_epoch},
                   {"history", o.run.history}};
  j["model"] = nlohmann::json::parse(to_json_text(o.run.model));
  if (o.metrics) {
    nlohmann::json ivs = nlohmann::json::array();
    for (const auto& r : o.metrics->intervals) ivs.push_back(interval_json(r, bench));
    j["metrics"] = {{"r2", o.metrics->r2},
                    {"w1", o.metrics->w1},
                    {"grid_size", o.metrics->grid_size},
                    {"intervals", ivs}};
  } else {
    j["metrics"] = nullptr;
  }
  j["failure"] = o.failure.empty() ? nlohmann::json(nullptr) : nlohmann::json(o.failure);
  j["files"] = {{"model", "model.json"}, {"samples", "samples.csv"}, {"plot", "plot.csv"}};
  j["timestamp"] = {{"created_utc", utc_now()}, {"wall_time_s", o.run.wall_time_s}};
  return j;
}

std::string plot_csv(const CircuitModel& model, const Benchmark& bench, int grid_size, const std::string& echo) {
  const GridData g = grid_data(model, bench, grid_size);
  std::ostringstream out;
  out << commented(echo) << "x_norm,s_phys,f,q,rel_err\n" << std::setprecision(17);
  for (std::size_t i = 0; i < g.x.size(); ++i) {
    out << g.x[i] << ',' << g.s[i] << ',' << g.f[i] << ',' << g.q[i] << ',' << relative_error(g.q[i], g.f[i])
        << '\n';
  }
  return out.str();
}

int write_run(const ExperimentConfig& config, const ExperimentOutcome& o, const std::string& dir,
              nlohmann::json* record_out) {
  const fs::path root(dir);
  make_dir(root);
  const std::string echo = echo_text(config);

  nlohmann::json model = nlohmann::json::parse(to_json_text(o.run.model));
  model["tool_version"] = tool_version();
  model["config"] = to_ini(config);
  write_file(root / "model.json", model.dump(2) + "\n");
  write_file(root / "samples.csv", to_csv(o.samples, echo));
  if (o.metrics) {
    write_file(root / "plot.csv", plot_csv(o.run.model, benchmark_by_name(config.benchmark), config.metrics.grid_size,
                                           echo));
  }
  nlohmann::json record = run_record(config, o);
  if (!o.metrics) record["files"].erase("plot");
  write_file(root / "run_record.json", record.dump(2) + "\n");
  if (record_out) *record_out = std::move(record);
  return o.numerical_failure ? kExitNumerical : kExitOk;
}

int cmd_run(const std::string& config_path, const CliOptions& cli, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ExperimentConfig config = with_overrides(load_config(config_path), cli);
    config.validate();
    const std::string dir = resolve_output_dir(config, cli);
    const ExperimentOutcome o = execute(config);
    const int code = write_run(config, o, dir);
    if (code != kExitOk) {
      err << "numerical failure: " << o.failure << " (partial record in " << dir << ")\n";
      return code;
    }
    const Benchmark bench = benchmark_by_name(config.benchmark);
    out << config.benchmark << ' ' << to_string(config.ansatz) << " L=" << config.layers << ' '
        << to_string(config.sampler.kind) << '/' << to_string(config.loss.kind) << " seed=" << config.seed << '\n';
    out << "  R2 = " << std::setprecision(6) << o.metrics->r2 << "  W1 = " << o.metrics->w1 << '\n';
    for (const auto& r : o.metrics->intervals) {
      out << "  " << std::left << std::setw(18) << r.label << std::right << std::setprecision(6)
          << r.predicted << "  (reference " << r.reference << ", "
          << (r.zero_reference ? "abs error " : "rel error ") << r.rel_error << ")\n";
    }
    (void)bench;
    out << "  output: " << dir << '\n';
    return kExitOk;
  });
}

void rank_sweep(std::vector<SweepRow>& rows) {
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].best_rank = 0;
    if (rows[i].ok) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rows[a].w1 < rows[b].w1; });
  for (std::size_t k = 0; k < order.size() && k < 3; ++k) rows[order[k]].best_rank = static_cast<int>(k) + 1;
}

int cmd_sweep(const std::string& config_path, const CliOptions& cli, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ExperimentConfig base = with_overrides(load_config(config_path), cli);
    base.validate();
    const std::string dir = resolve_output_dir(base, cli);
    const Benchmark bench = benchmark_by_name(base.benchmark);

    std::vector<SweepRow> rows;
    for (auto s : base.sweep.samplers) {
      for (auto l : base.sweep.losses) {
        SweepRow row{};
        row.sampler = s;
        row.loss = l;
        row.seed = sweep_cell_seed(base.seed, s, l);
        rows.push_back(row);
      }
    }

    std::atomic<std::size_t> next{0};
    std::mutex log_mutex;
    auto worker = [&] {
      for (std::size_t i = next++; i < rows.size(); i = next++) {
        SweepRow& row = rows[i];
        ExperimentConfig cell = base;
        cell.sampler.kind = row.sampler;
        cell.loss.kind = row.loss;
        cell.seed = row.seed;
        const std::string name = to_string(row.sampler) + "_" + to_string(row.loss);
        try {
          const ExperimentOutcome o = execute(cell);
          write_run(cell, o, (fs::path(dir) / "cells" / name).string());
          row.ok = o.metrics.has_value() && !o.numerical_failure;
          row.status = row.ok ? "ok" : "failed: " + o.failure;
          if (o.metrics) {
            row.r2 = o.metrics->r2;
            row.w1 = o.metrics->w1;
            row.intervals = o.metrics->intervals;
          }
        } catch (const InvalidConfig&) {
          throw;
        } catch (const Error& e) {
          row.ok = false;
          row.status = std::string("failed: ") + e.what();
        }
        std::lock_guard lock(log_mutex);
        spdlog::info("sweep cell {} {}", name, row.status);
      }
    };
    const int n_workers = std::clamp(cli.workers, 1, static_cast<int>(std::max<std::size_t>(rows.size(), 1)));
    if (n_workers == 1) {
      worker();
    } else {
      std::vector<std::exception_ptr> errors(n_workers);
      std::vector<std::thread> pool;
      for (int w = 0; w < n_workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            worker();
          } catch (...) {
            errors[w] = std::current_exception();
            next = rows.size();
          }
        });
      }
      for (auto& t : pool) t.join();
      for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
    }
    rank_sweep(rows);

    // CSV table, one row per cell in config order.
    std::ostringstream csv;
    csv << commented(echo_text(base)) << "rank,sampler,loss,seed,status,r2,w1";
    for (const auto& iv : bench.intervals) csv << ',' << csv_field(iv.label) << ',' << csv_field(iv.label + " rel");
    csv << '\n';
    nlohmann::json jrows = nlohmann::json::array();
    for (const auto& r : rows) {
      csv << (r.best_rank ? std::to_string(r.best_rank) : "") << ',' << to_string(r.sampler) << ','
          << to_string(r.loss) << ',' << r.seed << ',' << csv_field(r.status) << ',';
      if (r.ok) {
        csv << num(r.r2) << ',' << num(r.w1);
        for (const auto& iv : r.intervals) csv << ',' << num(iv.predicted) << ',' << num(iv.rel_error);
      } else {
        csv << ',';
        for (std::size_t k = 0; k < bench.intervals.size(); ++k) csv << ",,";
      }
      csv << '\n';
      nlohmann::json jr{{"sampler", to_string(r.sampler)}, {"loss", to_string(r.loss)}, {"seed", r.seed},
                        {"status", r.status},              {"rank", r.best_rank}};
      if (r.ok) {
        jr["r2"] = r.r2;
        jr["w1"] = r.w1;
        nlohmann::json ivs = nlohmann::json::array();
        for (const auto& iv : r.intervals) ivs.push_back(interval_json(iv, bench));
        jr["intervals"] = ivs;
      }
      jrows.push_back(jr);
    }
    nlohmann::json best = nlohmann::json::array();
    for (int k = 1; k <= 3; ++k) {
      for (const auto& r : rows) {
        if (r.best_rank == k) best.push_back(to_string(r.sampler) + "/" + to_string(r.loss));
      }
    }
    nlohmann::json summary{{"format", kSweepFormat},
                           {"tool_version", tool_version()},
                           {"config", config_json(base)},
                           {"rows", jrows},
                           {"best_three", best},
                           {"timestamp", {{"created_utc", utc_now()}}}};
    make_dir(dir);
    write_file(fs::path(dir) / "sweep_table.csv", csv.str());
    write_file(fs::path(dir) / "sweep_summary.json", summary.dump(2) + "\n");

    out << "sweep " << base.benchmark << ' ' << to_string(base.ansatz) << " L=" << base.layers << " ("
        << rows.size() << " cells)\n";
    out << std::left << std::setw(6) << "rank" << std::setw(10) << "sampler" << std::setw(10) << "loss"
        << std::setw(12) << "R2" << std::setw(12) << "W1" << "status\n";
    for (const auto& r : rows) {
      out << std::left << std::setw(6) << (r.best_rank ? std::to_string(r.best_rank) : "-") << std::setw(10)
          << to_string(r.sampler) << std::setw(10) << to_string(r.loss) << std::setprecision(5) << std::setw(12)
          << (r.ok ? r.r2 : NAN) << std::setw(12) << (r.ok ? r.w1 : NAN) << r.status << '\n';
    }
    out << std::right << "best three by W1:";
    for (const auto& b : best) out << ' ' << b.get<std::string>();
    out << "\noutput: " << dir << '\n';
    return kExitOk;
  });
}

int cmd_noise_eval(const std::string& config_path, const std::string& model_path, const CliOptions& cli,
                   std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ExperimentConfig config = with_overrides(load_config(config_path), cli);
    config.validate();
    std::ifstream in(model_path);
    if (!in) throw InvalidConfig("cannot open model file '" + model_path + "'", "model");
    std::stringstream text;
    text << in.rdbuf();
    const CircuitModel model = model_from_json_text(text.str());
    if (model.kind != config.ansatz || model.layers != config.layers) {
      throw InvalidConfig("model is " + to_string(model.kind) + " L=" + std::to_string(model.layers) +
                              " but the config asks for " + to_string(config.ansatz) +
                              " L=" + std::to_string(config.layers),
                          "ansatz");
    }
    const Benchmark bench = benchmark_by_name(config.benchmark);
    if (bench.intervals.empty()) throw InvalidConfig("benchmark has no named intervals", "benchmark");
    const NamedInterval& iv = bench.intervals.back();
    const double xa = normalize(bench, iv.a);
    const double xb = normalize(bench, iv.b);
    const double to_phys = jacobian(bench) / bench.output_scale;
    const double reference = reference_integral(bench, iv.a, iv.b);
    const double noiseless = integral(model, bench, iv.a, iv.b);
    const double strength = config.noise.strength > 0.0 ? config.noise.strength : kDefaultEvalStrength;
    const double unit = bench.display_unit;

    std::ostringstream csv;
    csv << commented(echo_text(config)) << "interval,sampler,loss,noise,strength,runs,mean,std,rel_error_pct\n";
    const auto row_prefix = csv_field(iv.label) + "," + to_string(config.sampler.kind) + "," +
                            to_string(config.loss.kind) + ",";
    csv << row_prefix << "none,0,1," << num(noiseless) << ",0," << num(100.0 * relative_error(noiseless, reference))
        << '\n';

    out << "noise evaluation on " << iv.label << " (" << config.benchmark << ", values in units of " << unit << ")\n";
    out << "  oracle reference " << std::setprecision(6) << reference / unit;
    if (iv.published) out << ", published " << *iv.published / unit;
    out << "\n  " << std::left << std::setw(14) << "noise" << std::setw(24) << "integral" << "rel. error\n";
    auto line = [&](const std::string& name, double mean, double sd, bool show_sd) {
      std::ostringstream v;
      v << std::fixed << std::setprecision(4) << mean / unit;
      if (show_sd) v << " (+-" << sd / unit << ")";
      std::ostringstream e;
      e << std::fixed << std::setprecision(2) << 100.0 * relative_error(mean, reference) << "%";
      out << "  " << std::left << std::setw(14) << name << std::setw(24) << v.str() << e.str() << '\n';
    };
    line("none", noiseless, 0.0, false);

    nlohmann::json jrows = nlohmann::json::array();
    jrows.push_back({{"noise", "none"}, {"mean", noiseless}, {"std", 0.0}, {"runs", 1}});
    for (NoiseKind kind : config.noise_eval_kinds) {
      NoiseConfig nc;
      nc.kind = kind;
      nc.strength = strength;
      nc.runs = config.noise.runs;
      nc.validate();
      const std::uint64_t seed = derive_seed(config.seed, {fnv1a("noise-eval"), fnv1a(to_string(kind))});
      const NoisyIntegral r = noisy_integral(model, nc, xa, xb, nc.runs, seed);
      const double mean = r.mean * to_phys;
      const double sd = r.std * to_phys;
      csv << row_prefix << to_string(kind) << ',' << num(strength) << ',' << r.runs << ',' << num(mean) << ','
          << num(sd) << ',' << num(100.0 * relative_error(mean, reference)) << '\n';
      line(to_string(kind), mean, sd, kind == NoiseKind::GateError);
      jrows.push_back({{"noise", to_string(kind)}, {"strength", strength}, {"mean", mean}, {"std", sd},
                       {"runs", r.runs}});
    }
    const std::string dir = resolve_output_dir(config, cli);
    make_dir(dir);
    nlohmann::json doc{{"format", kNoiseFormat},
                       {"tool_version", tool_version()},
                       {"config", config_json(config)},
                       {"interval", {{"label", iv.label}, {"a", iv.a}, {"b", iv.b}}},
                       {"reference", reference},
                       {"rows", jrows},
                       {"timestamp", {{"created_utc", utc_now()}}}};
    if (iv.published) doc["published"] = *iv.published;
    write_file(fs::path(dir) / "noise_table.csv", csv.str());
    write_file(fs::path(dir) / "noise_eval.json", doc.dump(2) + "\n");
    out << "  output: " << dir << '\n';
    return kExitOk;
  });
}

int cmd_oracle(const std::string& benchmark, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::vector<Benchmark> list;
    if (benchmark.empty()) {
      list = {cpf(), step(), breit_wigner()};
    } else {
      list.push_back(benchmark_by_name(benchmark));
    }
    for (const auto& b : list) {
      out << b.name << " on [" << b.s_min << ", " << b.s_max << "]\n";
      for (const auto& iv : b.intervals) {
        const double ref = reference_integral(b, iv.a, iv.b);
        out << "  " << std::left << std::setw(18) << iv.label << std::right << std::setprecision(10) << std::setw(18)
            << ref;
        if (iv.published) out << "   published " << std::setprecision(6) << *iv.published;
        out << '\n';
      }
    }
    return kExitOk;
  });
}

}  // namespace vqint
