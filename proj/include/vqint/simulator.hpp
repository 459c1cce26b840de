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

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "vqint/quantum_core.hpp"

// Differentiable evaluation of parameterised circuits.
//
// A circuit is a fixed gate list whose rotation angles depend on the trainable
// parameters and on the scalar input x. Evaluation propagates the state and its
// x-tangent together, so a single pass yields both Q(x) and dQ/dx. The reverse
// sweep then accumulates gradients of any linear combination
// u_value * Q + u_slope * dQ/dx with respect to the parameters.

namespace vqint::sim {

enum class Axis { X, Y, Z };

/// How a rotation angle is formed.
enum class AngleRule {
  Parameter,    ///< angle = theta[p]
  ScaledInput,  ///< angle = theta[p] * x
  Signal,       ///< angle = -2 arccos(x); no parameter
};

struct Rotation {
  Axis axis;
  int target;
  int control = -1;  ///< qubit controlling the rotation, or -1
  AngleRule rule = AngleRule::Parameter;
  int param = -1;
};

struct FixedGate {
  kernels::SmallMatrix matrix;
  std::vector<int> targets;
};

using Operation = std::variant<Rotation, FixedGate>;

struct Circuit {
  int n_qubits = 1;
  int n_params = 0;
  /// Pure initial state; ignored when `initial_density` is set.
  ComplexVector initial_state;
  std::optional<ComplexMatrix> initial_density;
  std::vector<Operation> ops;
  /// Expectation readout observable over the full register.
  ComplexMatrix observable;
  /// When set, the readout is Re <bra| U |initial> instead of an expectation.
  /// Only meaningful for pure evolution.
  std::optional<ComplexVector> amplitude_bra;
};

struct EvalOptions {
  /// Added to the angle of the gate driven by parameter p (size n_params or empty).
  std::span<const double> angle_offsets{};
  /// Single-qubit Kraus set applied after every gate to each qubit it touched.
  /// Forces density-matrix evolution.
  const std::vector<ComplexMatrix>* channel = nullptr;
  /// Evolve the density matrix even without a channel.
  bool force_density = false;
};

struct Jet {
  double value = 0.0;  ///< Q(x)
  double slope = 0.0;  ///< dQ/dx
};

struct JetGradient {
  Jet jet;
  std::vector<double> d_value;  ///< dQ/dtheta (empty unless requested)
  std::vector<double> d_slope;  ///< d(dQ/dx)/dtheta (empty unless requested)
};

Jet evaluate(const Circuit& circuit, std::span<const double> theta, double x,
             const EvalOptions& options = {});

JetGradient differentiate(const Circuit& circuit, std::span<const double> theta, double x,
                          const EvalOptions& options, bool value_gradient, bool slope_gradient);

/// Qubits touched by an operation (control first).
std::vector<int> touched_qubits(const Operation& op);

}  // namespace vqint::sim
