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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vqint/quantum_core.hpp"

// The three circuit families. A CircuitModel is plain data (kind, depth,
// parameters); the gate lists are rebuilt from (kind, L) on demand and cached.
//
// Parameter layouts (core theta, affine excluded):
//   QNN  2 qubits, layer l, qubit j: 6l + 3j + {0: RX angle, 1: RZ input scale, 2: RY angle}
//   QSP  even-chain phases first, then odd-chain phases
//   DQC1 4 tail angles (RX, RY per register qubit), then per layer 8 entries:
//        3r + {0: RX, 1: RY, 2: RZ} for register qubit r, and 6 + r for the input scale
// The flat vector used by the optimizer is theta followed by (a, b) when the
// model carries an affine output map.

namespace vqint {

enum class AnsatzKind { QNN, QSP, DQC1 };

std::string to_string(AnsatzKind kind);
/// Accepts "qnn", "qsp", "dqc1" in any case.
AnsatzKind parse_ansatz_kind(std::string_view text);

struct Affine {
  double a = 1.0;
  double b = 0.0;
  bool operator==(const Affine&) const = default;
};

struct CircuitModel {
  AnsatzKind kind = AnsatzKind::QNN;
  int layers = 1;
  std::vector<double> theta;
  std::optional<Affine> affine;

  bool operator==(const CircuitModel&) const = default;
};

/// Trainable parameters P (including the affine pair).
int parameter_count(AnsatzKind kind, int layers);
/// Data encodings E.
int encoding_count(AnsatzKind kind, int layers);
/// Length of `theta` (P minus the affine pair).
int core_parameter_count(AnsatzKind kind, int layers);
bool has_affine(AnsatzKind kind);

/// Core indices whose gate angle is theta[i] * x.
bool is_input_scale(AnsatzKind kind, int index);

/// QSP signal degrees (even chain, odd chain) for depth L.
std::pair<int, int> qsp_degrees(int layers);

/// Initial range of the input scales theta_i multiplying x. The upper end sets
/// the highest frequency present at the start of training; sharp features
/// (STEP, BW) need more than the smooth CPF.
struct InitRange {
  double scale_min = 0.5;
  double scale_max = 6.0;

  void validate() const;
};

/// Rotation angles uniform on [-pi, pi], input scales uniform on `init`,
/// affine (1, 0). Throws InvalidConfig for L < 1.
CircuitModel build(AnsatzKind kind, int layers, std::uint64_t seed, const InitRange& init = {});

/// Throws InvalidInput when the parameter count or finiteness is off.
void validate(const CircuitModel& model);

constexpr double kQspEdge = 1e-6;

/// Largest |x| the model accepts.
double admissible_bound(AnsatzKind kind);
/// Clamps x into the admissible domain (used for integral endpoints).
double clamp_to_domain(AnsatzKind kind, double x);

std::vector<double> flat_parameters(const CircuitModel& model);
void set_flat_parameters(CircuitModel& model, std::span<const double> flat);
std::size_t flat_size(const CircuitModel& model);

/// Noise injected during evaluation.
struct ModelNoise {
  /// Added to the gate angle driven by theta[i]; empty or size theta.size().
  std::span<const double> angle_offsets{};
  /// Single-qubit Kraus set applied after every gate; nullptr for none.
  const std::vector<ComplexMatrix>* channel = nullptr;
};

struct ModelJet {
  double value = 0.0;  ///< output after the affine map
  double slope = 0.0;  ///< d value / dx
  double raw_value = 0.0;  ///< before the affine map
  double raw_slope = 0.0;
};

struct ModelJetGradient {
  ModelJet jet;
  std::vector<double> d_value;  ///< over flat parameters
  std::vector<double> d_slope;  ///< over flat parameters
};

/// Q(x) and dQ/dx. Throws DomainError outside the admissible domain.
ModelJet model_jet(const CircuitModel& model, double x, const ModelNoise& noise = {});

ModelJetGradient model_jet_gradient(const CircuitModel& model, double x, const ModelNoise& noise,
                                    bool value_gradient, bool slope_gradient);

/// Output including the affine map.
double evaluate(const CircuitModel& model, double x);
double eval_qnn(const CircuitModel& model, double x);
double eval_qsp(const CircuitModel& model, double x);
double eval_dqc1(const CircuitModel& model, double x);

/// Pre-affine output evaluated through an explicitly chosen circuit: for QSP
/// this is the Hadamard-test density circuit instead of the amplitude readout.
double eval_hadamard_test(const CircuitModel& model, double x);

/// JSON document {kind, layers, theta[], affine}. Doubles are written in
/// shortest round-trip form, so parsing the text restores identical bits.
std::string to_json_text(const CircuitModel& model);
CircuitModel model_from_json_text(std::string_view text);

}  // namespace vqint
