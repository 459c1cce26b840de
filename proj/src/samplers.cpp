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

#include "vqint/samplers.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

#include <spdlog/spdlog.h>

#include "vqint/errors.hpp"
#include "vqint/seeding.hpp"

namespace vqint {

namespace {

void require_count(int n, const char* field) {
  if (n < 1) throw InvalidConfig("sample count must be at least 1", field);
}

std::vector<double> attach_targets(const Integrand& f, const std::vector<double>& xs) {
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out[i] = f(xs[i]);
    if (!std::isfinite(out[i])) throw NumericalError("integrand is not finite at x = " + std::to_string(xs[i]));
  }
  return out;
}

std::vector<double> uniform_points(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (double& x : xs) x = u(rng);
  return xs;
}

// Central difference that stays inside [-1, 1].
double central_difference(const std::function<double(double)>& g, double x, double h) {
  const double lo = std::max(-1.0, x - h), hi = std::min(1.0, x + h);
  return (g(hi) - g(lo)) / (hi - lo);
}

}  // namespace

std::string to_string(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::Uniform: return "uniform";
    case SamplerKind::Importance: return "is";
    case SamplerKind::HMC: return "hmc";
  }
  return "?";
}

SamplerKind parse_sampler_kind(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "uniform" || lower == "uni") return SamplerKind::Uniform;
  if (lower == "is" || lower == "importance") return SamplerKind::Importance;
  if (lower == "hmc") return SamplerKind::HMC;
  throw InvalidConfig("unknown sampler '" + std::string(text) + "'", "sampler.kind");
}

void HmcConfig::validate() const {
  if (steps < 1) throw InvalidConfig("must be >= 1", "sampler.hmc_steps");
  if (!(step_size > 0.0)) throw InvalidConfig("must be > 0", "sampler.hmc_step_size");
  if (chains < 1) throw InvalidConfig("must be >= 1", "sampler.hmc_chains");
  if (!(uniform_mix >= 0.0 && uniform_mix <= 1.0)) throw InvalidConfig("must lie in [0, 1]", "sampler.uniform_mix");
  if (burn_in < 0) throw InvalidConfig("must be >= 0", "sampler.hmc_burn_in");
  if (!(regularization > 0.0)) throw InvalidConfig("must be > 0", "sampler.hmc_regularization");
  if (!(fd_step > 0.0)) throw InvalidConfig("must be > 0", "sampler.fd_step");
}

void ImportanceConfig::validate() const {
  if (pool_factor < 1) throw InvalidConfig("must be >= 1", "sampler.pool_factor");
  if (!(fd_step > 0.0)) throw InvalidConfig("must be > 0", "sampler.fd_step");
}

SampleSet sample_uniform(const Integrand& f, int n, std::uint64_t seed) {
  require_count(n, "sampler.n_train");
  auto rng = make_rng(seed, {fnv1a("uniform")});
  SampleSet s;
  s.points = uniform_points(n, rng);
  s.targets = attach_targets(f, s.points);
  s.sampler = SamplerKind::Uniform;
  s.seed = seed;
  return s;
}

SampleSet sample_importance(const Integrand& f, int n_pool, int n, std::uint64_t seed, double fd_step) {
  require_count(n, "sampler.n_train");
  if (n_pool < n) throw InvalidConfig("candidate pool smaller than the sample count", "sampler.pool_factor");
  auto rng = make_rng(seed, {fnv1a("importance")});
  const std::vector<double> pool = uniform_points(n_pool, rng);

  std::vector<double> w(pool.size());
  double total = 0.0;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const double d = central_difference(f, pool[i], fd_step);
    w[i] = std::isfinite(d) ? d * d : 0.0;
    if (!std::isfinite(w[i])) w[i] = 0.0;
    total += w[i];
  }
  if (!(total > 0.0) || !std::isfinite(total)) {
    spdlog::debug("importance weights vanish; falling back to uniform weights");
    std::fill(w.begin(), w.end(), 1.0);
  }
  std::discrete_distribution<std::size_t> pick(w.begin(), w.end());
  SampleSet s;
  s.points.resize(static_cast<std::size_t>(n));
  for (double& x : s.points) x = pool[pick(rng)];
  s.targets = attach_targets(f, s.points);
  s.sampler = SamplerKind::Importance;
  s.seed = seed;
  std::ostringstream note;
  note << "n_pool=" << n_pool << " fd_step=" << fd_step;
  s.settings = note.str();
  return s;
}

double acceptance_probability(double delta_h) {
  if (std::isnan(delta_h)) return 0.0;
  return delta_h <= 0.0 ? 1.0 : std::exp(-delta_h);
}

HmcDiagnostics hmc_chains(const Integrand& f, int n, std::uint64_t seed, const HmcConfig& cfg) {
  cfg.validate();
  HmcDiagnostics out;
  if (n <= 0) return out;
  const auto potential = [&](double x) { return -std::log(std::abs(f(x)) + cfg.regularization); };
  const auto force = [&](double x) { return central_difference(potential, x, cfg.fd_step); };

  const int per_chain = (n + cfg.chains - 1) / cfg.chains;
  out.points.reserve(static_cast<std::size_t>(per_chain) * static_cast<std::size_t>(cfg.chains));
  for (int c = 0; c < cfg.chains; ++c) {
    auto rng = make_rng(seed, {fnv1a("hmc"), static_cast<std::uint64_t>(c)});
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::normal_distribution<double> momentum(0.0, 1.0);
    double x = 2.0 * u01(rng) - 1.0;
    double ux = potential(x);
    long chain_accepted = 0;
    for (int it = 0; it < cfg.burn_in + per_chain; ++it) {
      const double p0 = momentum(rng);
      double q = x, p = p0;
      bool inside = true;
      p -= 0.5 * cfg.step_size * force(q);
      for (int k = 0; k < cfg.steps; ++k) {
        q += cfg.step_size * p;
        if (q < -1.0 || q > 1.0) {
          inside = false;
          break;
        }
        if (k + 1 < cfg.steps) p -= cfg.step_size * force(q);
      }
      bool accept = false;
      if (inside) {
        p -= 0.5 * cfg.step_size * force(q);
        const double uq = potential(q);
        const double dh = (uq + 0.5 * p * p) - (ux + 0.5 * p0 * p0);
        accept = u01(rng) < acceptance_probability(dh);
        if (accept) {
          x = q;
          ux = uq;
        }
      } else {
        u01(rng);  // keep the stream aligned whether or not the path left the domain
      }
      ++out.proposals;
      if (accept) {
        ++out.accepted;
        ++chain_accepted;
      }
      if (it >= cfg.burn_in) out.points.push_back(x);
    }
    if (chain_accepted == 0) {
      ++out.stuck_chains;
      spdlog::warn("HMC chain {} accepted no proposals; it returns its initial point", c);
    }
  }
  out.points.resize(static_cast<std::size_t>(n));
  return out;
}

SampleSet sample_hmc(const Integrand& f, int n, std::uint64_t seed, const HmcConfig& cfg) {
  require_count(n, "sampler.n_train");
  cfg.validate();
  const int n_uniform = static_cast<int>(std::lround(cfg.uniform_mix * n));
  const int n_hmc = n - n_uniform;
  SampleSet s;
  s.points = hmc_chains(f, n_hmc, seed, cfg).points;
  auto rng = make_rng(seed, {fnv1a("hmc-mix")});
  const auto extra = uniform_points(n_uniform, rng);
  s.points.insert(s.points.end(), extra.begin(), extra.end());
  s.targets = attach_targets(f, s.points);
  s.sampler = SamplerKind::HMC;
  s.seed = seed;
  std::ostringstream note;
  note << "steps=" << cfg.steps << " step_size=" << cfg.step_size << " chains=" << cfg.chains
       << " burn_in=" << cfg.burn_in << " uniform_mix=" << cfg.uniform_mix << " n_uniform=" << n_uniform;
  s.settings = note.str();
  return s;
}

std::string to_csv(const SampleSet& samples, std::string_view header_comment) {
  std::ostringstream out;
  out << "# sampler=" << to_string(samples.sampler) << " seed=" << samples.seed;
  if (!samples.settings.empty()) out << ' ' << samples.settings;
  out << '\n';
  if (!header_comment.empty()) {
    std::istringstream lines{std::string(header_comment)};
    for (std::string line; std::getline(lines, line);) out << "# " << line << '\n';
  }
  out << "x_norm,target\n";
  out << std::setprecision(17);
  for (std::size_t i = 0; i < samples.points.size(); ++i) {
    out << samples.points[i] << ',' << samples.targets[i] << '\n';
  }
  return out.str();
}

}  // namespace vqint
