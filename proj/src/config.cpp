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

#include "vqint/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "vqint/benchmarks.hpp"
#include "vqint/errors.hpp"

namespace vqint {

namespace {

namespace pt = boost::property_tree;

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string fmt(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

// Reads typed values out of one section and remembers which keys were used.
class Section {
 public:
  Section(const pt::ptree* tree, std::string name) : tree_(tree), name_(std::move(name)) {}

  std::optional<std::string> raw(const std::string& key) {
    used_.insert(key);
    if (tree_ == nullptr) return std::nullopt;
    const auto v = tree_->get_optional<std::string>(pt::ptree::path_type(key, '\0'));
    if (!v) return std::nullopt;
    return trim(*v);
  }

  template <typename T>
  void read(const std::string& key, T& into) {
    const auto v = raw(key);
    if (!v) return;
    into = convert<T>(*v, key);
  }

  void check_unknown() const {
    if (tree_ == nullptr) return;
    for (const auto& [key, child] : *tree_) {
      if (!child.empty()) continue;  // subsections are handled by the caller
      if (!used_.count(key)) throw InvalidConfig("unknown key", field(key));
    }
  }

  std::string field(const std::string& key) const { return name_.empty() ? key : name_ + "." + key; }

 private:
  template <typename T>
  T convert(const std::string& text, const std::string& key) const {
    T value{};
    if constexpr (std::is_same_v<T, std::string>) {
      return text;
    } else if constexpr (std::is_same_v<T, double>) {
      try {
        std::size_t pos = 0;
        value = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw InvalidConfig("expected a number, got '" + text + "'", field(key));
      }
      return value;
    } else {
      const auto* end = text.data() + text.size();
      const auto res = std::from_chars(text.data(), end, value);
      if (res.ec != std::errc() || res.ptr != end) {
        throw InvalidConfig("expected an integer, got '" + text + "'", field(key));
      }
      return value;
    }
  }

  const pt::ptree* tree_;
  std::string name_;
  std::set<std::string> used_;
};

template <typename Fn>
auto with_field(const std::string& field, Fn&& fn) {
  try {
    return fn();
  } catch (const InvalidConfig& e) {
    if (!e.field().empty()) throw;
    throw InvalidConfig(e.what(), field);
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  if (benchmark.empty()) throw InvalidConfig("missing benchmark name (cpf, step or bw)", "benchmark");
  (void)benchmark_by_name(benchmark);
  if (layers < 1) throw InvalidConfig("must be >= 1", "ansatz.layers");
  init.validate();
  if (sampler.n_train < 1) throw InvalidConfig("must be >= 1", "sampler.n_train");
  sampler.importance.validate();
  sampler.hmc.validate();
  loss.validate();
  optimizer.validate();
  noise.validate();
  if (sweep.samplers.empty()) throw InvalidConfig("needs at least one sampler", "sweep.samplers");
  if (sweep.losses.empty()) throw InvalidConfig("needs at least one loss", "sweep.losses");
  if (metrics.grid_size < 2) throw InvalidConfig("must be >= 2", "metrics.grid_size");
  if (metrics.w1_intervals < 1) throw InvalidConfig("must be >= 1", "metrics.w1_intervals");
}

ExperimentConfig parse_config(const std::string& text) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw InvalidConfig(std::string("cannot parse configuration: ") + e.message() + " (line " +
                            std::to_string(e.line()) + ")",
                        "config");
  }

  static const std::set<std::string> kSections = {"ansatz", "sampler", "loss", "optimizer",
                                                  "noise",  "sweep",   "metrics"};
  for (const auto& [key, child] : tree) {
    if (!child.empty() && !kSections.count(key)) throw InvalidConfig("unknown section", key);
  }
  const auto section = [&](const std::string& name) -> const pt::ptree* {
    const auto it = tree.find(name);
    return it == tree.not_found() ? nullptr : &it->second;
  };

  ExperimentConfig c;
  Section top(&tree, "");
  top.read("benchmark", c.benchmark);
  const auto seed_text = top.raw("seed");
  if (!seed_text) throw InvalidConfig("missing seed (no implicit entropy)", "seed");
  {
    const auto* end = seed_text->data() + seed_text->size();
    const auto res = std::from_chars(seed_text->data(), end, c.seed);
    if (res.ec != std::errc() || res.ptr != end) throw InvalidConfig("expected an unsigned integer", "seed");
  }
  top.read("output_dir", c.output_dir);
  top.check_unknown();

  Section ans(section("ansatz"), "ansatz");
  if (auto v = ans.raw("kind")) c.ansatz = parse_ansatz_kind(*v);
  ans.read("layers", c.layers);
  ans.read("scale_min", c.init.scale_min);
  ans.read("scale_max", c.init.scale_max);
  ans.check_unknown();

  Section smp(section("sampler"), "sampler");
  if (auto v = smp.raw("kind")) c.sampler.kind = parse_sampler_kind(*v);
  smp.read("n_train", c.sampler.n_train);
  smp.read("pool_factor", c.sampler.importance.pool_factor);
  double fd = c.sampler.importance.fd_step;
  smp.read("fd_step", fd);
  c.sampler.importance.fd_step = fd;
  c.sampler.hmc.fd_step = fd;
  smp.read("hmc_steps", c.sampler.hmc.steps);
  smp.read("hmc_step_size", c.sampler.hmc.step_size);
  smp.read("hmc_chains", c.sampler.hmc.chains);
  smp.read("hmc_burn_in", c.sampler.hmc.burn_in);
  smp.read("hmc_regularization", c.sampler.hmc.regularization);
  smp.read("uniform_mix", c.sampler.hmc.uniform_mix);
  smp.check_unknown();

  Section los(section("loss"), "loss");
  if (auto v = los.raw("kind")) c.loss.kind = parse_loss_kind(*v);
  los.read("lambda", c.loss.lambda);
  los.read("eps", c.loss.eps);
  los.check_unknown();

  Section opt(section("optimizer"), "optimizer");
  opt.read("lr", c.optimizer.lr);
  opt.read("beta1", c.optimizer.beta1);
  opt.read("beta2", c.optimizer.beta2);
  opt.read("eps", c.optimizer.eps);
  opt.read("epochs", c.optimizer.epochs);
  opt.read("batch_size", c.optimizer.batch_size);
  opt.check_unknown();

  Section noi(section("noise"), "noise");
  if (auto v = noi.raw("kind")) c.noise.kind = with_field("noise.kind", [&] { return parse_noise_kind(*v); });
  noi.read("strength", c.noise.strength);
  noi.read("realizations", c.noise.realizations);
  noi.read("runs", c.noise.runs);
  if (auto v = noi.raw("eval_kinds")) {
    c.noise_eval_kinds.clear();
    for (const auto& item : split_list(*v)) {
      const NoiseKind k = with_field("noise.eval_kinds", [&] { return parse_noise_kind(item); });
      if (k == NoiseKind::None) continue;
      c.noise_eval_kinds.push_back(k);
    }
  }
  noi.check_unknown();

  Section swp(section("sweep"), "sweep");
  if (auto v = swp.raw("samplers")) {
    c.sweep.samplers.clear();
    for (const auto& item : split_list(*v))
      c.sweep.samplers.push_back(with_field("sweep.samplers", [&] { return parse_sampler_kind(item); }));
  }
  if (auto v = swp.raw("losses")) {
    c.sweep.losses.clear();
    for (const auto& item : split_list(*v))
      c.sweep.losses.push_back(with_field("sweep.losses", [&] { return parse_loss_kind(item); }));
  }
  swp.check_unknown();

  Section met(section("metrics"), "metrics");
  met.read("grid_size", c.metrics.grid_size);
  met.read("w1_intervals", c.metrics.w1_intervals);
  met.check_unknown();

  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfig("cannot open configuration file '" + path + "'", "config");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string to_ini(const ExperimentConfig& c) {
  std::ostringstream o;
  o << "benchmark = " << c.benchmark << '\n';
  o << "seed = " << c.seed << '\n';
  if (!c.output_dir.empty()) o << "output_dir = " << c.output_dir << '\n';
  o << "\n[ansatz]\nkind = " << to_string(c.ansatz) << "\nlayers = " << c.layers
    << "\nscale_min = " << fmt(c.init.scale_min) << "\nscale_max = " << fmt(c.init.scale_max) << '\n';
  o << "\n[sampler]\nkind = " << to_string(c.sampler.kind) << "\nn_train = " << c.sampler.n_train
    << "\npool_factor = " << c.sampler.importance.pool_factor << "\nfd_step = " << fmt(c.sampler.importance.fd_step)
    << "\nhmc_steps = " << c.sampler.hmc.steps << "\nhmc_step_size = " << fmt(c.sampler.hmc.step_size)
    << "\nhmc_chains = " << c.sampler.hmc.chains << "\nhmc_burn_in = " << c.sampler.hmc.burn_in
    << "\nhmc_regularization = " << fmt(c.sampler.hmc.regularization)
    << "\nuniform_mix = " << fmt(c.sampler.hmc.uniform_mix) << '\n';
  o << "\n[loss]\nkind = " << to_string(c.loss.kind) << "\nlambda = " << fmt(c.loss.lambda)
    << "\neps = " << fmt(c.loss.eps) << '\n';
  o << "\n[optimizer]\nlr = " << fmt(c.optimizer.lr) << "\nbeta1 = " << fmt(c.optimizer.beta1)
    << "\nbeta2 = " << fmt(c.optimizer.beta2) << "\neps = " << fmt(c.optimizer.eps)
    << "\nepochs = " << c.optimizer.epochs << "\nbatch_size = " << c.optimizer.batch_size << '\n';
  o << "\n[noise]\nkind = " << to_string(c.noise.kind) << "\nstrength = " << fmt(c.noise.strength)
    << "\nrealizations = " << c.noise.realizations << "\nruns = " << c.noise.runs << "\neval_kinds = ";
  for (std::size_t i = 0; i < c.noise_eval_kinds.size(); ++i) o << (i ? ", " : "") << to_string(c.noise_eval_kinds[i]);
  o << "\n\n[sweep]\nsamplers = ";
  for (std::size_t i = 0; i < c.sweep.samplers.size(); ++i) o << (i ? ", " : "") << to_string(c.sweep.samplers[i]);
  o << "\nlosses = ";
  for (std::size_t i = 0; i < c.sweep.losses.size(); ++i) o << (i ? ", " : "") << to_string(c.sweep.losses[i]);
  o << "\n\n[metrics]\ngrid_size = " << c.metrics.grid_size << "\nw1_intervals = " << c.metrics.w1_intervals << '\n';
  return o.str();
}

}  // namespace vqint
