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

#include "vqint/noise.hpp"

#include <cctype>
#include <cmath>
#include <random>

#include "vqint/errors.hpp"
#include "vqint/seeding.hpp"

namespace vqint {

std::string to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::None: return "none";
    case NoiseKind::GateError: return "gate_error";
    case NoiseKind::BitFlip: return "bit_flip";
    case NoiseKind::Depolarizing: return "depolarizing";
  }
  return "?";
}

NoiseKind parse_noise_kind(std::string_view text) {
  std::string key;
  for (unsigned char c : text)
    if (c != '-' && c != '_' && c != ' ') key.push_back(static_cast<char>(std::tolower(c)));
  if (key == "none" || key.empty()) return NoiseKind::None;
  if (key == "gateerror") return NoiseKind::GateError;
  if (key == "bitflip") return NoiseKind::BitFlip;
  if (key == "depolarizing" || key == "depolarising") return NoiseKind::Depolarizing;
  throw InvalidConfig("unknown noise kind '" + std::string(text) + "'", "noise.kind");
}

void NoiseConfig::validate() const {
  if (!(strength >= 0.0 && strength <= 1.0)) throw InvalidConfig("must lie in [0, 1]", "noise.strength");
  if (realizations < 0) throw InvalidConfig("must be >= 1 (or 0 for the default)", "noise.realizations");
  if (runs < 1) throw InvalidConfig("must be >= 1", "noise.runs");
}

int NoiseConfig::effective_realizations() const {
  if (kind != NoiseKind::GateError) return 1;
  return realizations > 0 ? realizations : 8;
}

std::vector<double> angle_offsets(std::size_t n, double delta, std::uint64_t seed) {
  if (!(delta >= 0.0)) throw InvalidInput("gate-error scale must be non-negative");
  std::vector<double> out(n, 0.0);
  if (delta == 0.0) return out;
  auto rng = make_rng(seed, {fnv1a("gate-error")});
  std::normal_distribution<double> phi(0.0, 1.0);
  for (double& v : out) v = delta * phi(rng);
  return out;
}

std::vector<double> perturb_angles(std::span<const double> theta, double delta, std::uint64_t seed) {
  auto out = angle_offsets(theta.size(), delta, seed);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += theta[i];
  return out;
}

std::vector<ComplexMatrix> channel_ops(NoiseKind kind, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidConfig("channel probability must lie in [0, 1]", "noise.strength");
  switch (kind) {
    case NoiseKind::BitFlip:
      return {std::sqrt(1.0 - p) * pauli('I'), std::sqrt(p) * pauli('X')};
    case NoiseKind::Depolarizing: {
      // sqrt(p/3) weights would contract by 1 - 4p/3; p/4 gives exactly p/2 I + (1 - p) rho
      const double w = std::sqrt(p / 4.0);
      return {std::sqrt(1.0 - 0.75 * p) * pauli('I'), w * pauli('X'), w * pauli('Y'), w * pauli('Z')};
    }
    default:
      throw InvalidConfig("no Kraus form for noise kind " + to_string(kind), "noise.kind");
  }
}

NoisyIntegral noisy_integral(const CircuitModel& model, const NoiseConfig& noise, double xa, double xb, int runs,
                             std::uint64_t seed) {
  noise.validate();
  if (runs < 1) throw InvalidConfig("must be >= 1", "noise.runs");
  const auto difference = [&](const ModelNoise& mn) {
    return model_jet(model, xb, mn).value - model_jet(model, xa, mn).value;
  };
  if (noise.inert()) return {difference({}), 0.0, 1};

  if (noise.kind != NoiseKind::GateError) {
    const auto ops = channel_ops(noise.kind, noise.strength);
    ModelNoise mn;
    mn.channel = &ops;
    return {difference(mn), 0.0, 1};
  }

  std::vector<double> values(static_cast<std::size_t>(runs));
  for (int r = 0; r < runs; ++r) {
    const auto offsets = angle_offsets(model.theta.size(), noise.strength,
                                       derive_seed(seed, {fnv1a("noisy-integral"), static_cast<std::uint64_t>(r)}));
    ModelNoise mn;
    mn.angle_offsets = offsets;
    values[static_cast<std::size_t>(r)] = difference(mn);
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= runs;
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  const double sd = runs > 1 ? std::sqrt(var / (runs - 1)) : 0.0;
  return {mean, sd, runs};
}

}  // namespace vqint
