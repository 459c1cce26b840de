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
#include <string_view>
#include <vector>

#include "vqint/ansatz.hpp"

namespace vqint {

enum class NoiseKind { None, GateError, BitFlip, Depolarizing };

std::string to_string(NoiseKind kind);
/// "none", "gate_error", "bit_flip", "depolarizing" ('-' and '_' interchangeable).
NoiseKind parse_noise_kind(std::string_view text);

struct NoiseConfig {
  NoiseKind kind = NoiseKind::None;
  double strength = 0.0;  ///< p for channels, delta for gate error
  int realizations = 0;   ///< per-epoch draws in training; 0 picks 8 for gate error, 1 otherwise
  int runs = 1000;        ///< evaluation repetitions for gate error

  void validate() const;
  /// Nothing is injected: no noise, or strength 0.
  bool inert() const { return kind == NoiseKind::None || strength == 0.0; }
  int effective_realizations() const;
};

/// theta + delta * phi, phi ~ N(0, 1) per entry.
std::vector<double> perturb_angles(std::span<const double> theta, double delta, std::uint64_t seed);

/// The additive part delta * phi alone (what the evaluator adds to each angle).
std::vector<double> angle_offsets(std::size_t n, double delta, std::uint64_t seed);

/// Single-qubit Kraus set. Throws InvalidConfig for p outside [0, 1].
std::vector<ComplexMatrix> channel_ops(NoiseKind kind, double p);

struct NoisyIntegral {
  double mean = 0.0;
  double std = 0.0;  ///< sample standard deviation over runs (0 for one run)
  int runs = 1;
};

/// Q(xb) - Q(xa) under noise, in model-output units (normalized coordinates).
/// Gate error draws `runs` independent perturbations, the same perturbation
/// for both endpoints; channels are deterministic and collapse to one run.
NoisyIntegral noisy_integral(const CircuitModel& model, const NoiseConfig& noise, double xa, double xb, int runs,
                             std::uint64_t seed);

}  // namespace vqint
