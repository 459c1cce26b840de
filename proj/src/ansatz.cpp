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

#include "vqint/ansatz.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <memory>
#include <numbers>

#include "vqint/errors.hpp"
#include "vqint/seeding.hpp"
#include "vqint/simulator.hpp"

namespace vqint {

namespace {

using sim::AngleRule;
using sim::Axis;
using sim::Circuit;
using sim::FixedGate;
using sim::Rotation;

ComplexVector plus_state(int n_qubits) {
  const auto d = Eigen::Index{1} << n_qubits;
  return ComplexVector::Constant(d, Complex{1.0 / std::sqrt(static_cast<double>(d))});
}

ComplexVector basis_zero(int n_qubits) {
  ComplexVector v = ComplexVector::Zero(Eigen::Index{1} << n_qubits);
  v(0) = 1.0;
  return v;
}

Circuit qnn_circuit(int layers) {
  Circuit c;
  c.n_qubits = 2;
  c.n_params = 6 * layers;
  c.initial_state = basis_zero(2);
  c.observable = pauli_string("ZZ");
  const auto cz = kernels::SmallMatrix::from(gate_matrix(GateKind::CZ));
  for (int l = 0; l < layers; ++l) {
    for (int j = 0; j < 2; ++j) {
      const int base = 6 * l + 3 * j;
      // RX(t0) RZ(t1 x) RY(t2) as a matrix product: RY acts first
      c.ops.emplace_back(Rotation{Axis::Y, j, -1, AngleRule::Parameter, base + 2});
      c.ops.emplace_back(Rotation{Axis::Z, j, -1, AngleRule::ScaledInput, base + 1});
      c.ops.emplace_back(Rotation{Axis::X, j, -1, AngleRule::Parameter, base + 0});
    }
    c.ops.emplace_back(FixedGate{cz, {0, 1}});
  }
  return c;
}

// One phase chain W(t1) S W(t2) ... S W(t_{d+1}) in time order, phases taken
// from theta[offset ...]. With `hadamard_test` every gate is controlled on an
// extra qubit 0 and the readout is <X> on that qubit.
Circuit qsp_chain(int n_params, int degree, int offset, bool hadamard_test) {
  Circuit c;
  c.n_params = n_params;
  const int control = hadamard_test ? 0 : -1;
  const int target = hadamard_test ? 1 : 0;
  c.n_qubits = hadamard_test ? 2 : 1;
  c.initial_state = plus_state(c.n_qubits);
  if (hadamard_test) {
    c.observable = pauli_string("XI");
  } else {
    c.observable = pauli_string("I");
    c.amplitude_bra = plus_state(1);
  }
  c.ops.emplace_back(Rotation{Axis::Z, target, control, AngleRule::Parameter, offset});
  for (int i = 1; i <= degree; ++i) {
    c.ops.emplace_back(Rotation{Axis::X, target, control, AngleRule::Signal, -1});
    c.ops.emplace_back(Rotation{Axis::Z, target, control, AngleRule::Parameter, offset + i});
  }
  return c;
}

Circuit dqc1_circuit(int layers) {
  Circuit c;
  c.n_qubits = 3;
  c.n_params = 8 * layers + 4;
  c.initial_state = basis_zero(3);
  // |+><+| (x) I/4
  ComplexMatrix rho = ComplexMatrix::Zero(8, 8);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int i = 0; i < 4; ++i) rho(4 * a + i, 4 * b + i) = 0.125;
  c.initial_density = rho;
  c.observable = pauli_string("XII");
  const auto ccz = kernels::SmallMatrix::from(controlled(gate_matrix(GateKind::CZ)));
  for (int r = 0; r < 2; ++r) {
    c.ops.emplace_back(Rotation{Axis::X, 1 + r, 0, AngleRule::Parameter, 2 * r});
    c.ops.emplace_back(Rotation{Axis::Y, 1 + r, 0, AngleRule::Parameter, 2 * r + 1});
  }
  for (int l = 0; l < layers; ++l) {
    const int base = 4 + 8 * l;
    for (int r = 0; r < 2; ++r) {
      // W = RX RY RZ as a matrix product
      c.ops.emplace_back(Rotation{Axis::Z, 1 + r, 0, AngleRule::Parameter, base + 3 * r + 2});
      c.ops.emplace_back(Rotation{Axis::Y, 1 + r, 0, AngleRule::Parameter, base + 3 * r + 1});
      c.ops.emplace_back(Rotation{Axis::X, 1 + r, 0, AngleRule::Parameter, base + 3 * r + 0});
    }
    c.ops.emplace_back(FixedGate{ccz, {0, 1, 2}});
    for (int r = 0; r < 2; ++r) {
      c.ops.emplace_back(Rotation{Axis::X, 1 + r, 0, AngleRule::ScaledInput, base + 6 + r});
    }
  }
  return c;
}

struct Compiled {
  std::vector<Circuit> pure;     // summed readouts for noiseless / angle-noise evaluation
  std::vector<Circuit> channel;  // summed readouts under a Kraus channel
};

std::shared_ptr<const Compiled> compile(AnsatzKind kind, int layers) {
  auto out = std::make_shared<Compiled>();
  switch (kind) {
    case AnsatzKind::QNN:
      out->pure.push_back(qnn_circuit(layers));
      out->channel = out->pure;
      break;
    case AnsatzKind::DQC1:
      out->pure.push_back(dqc1_circuit(layers));
      out->channel = out->pure;
      break;
    case AnsatzKind::QSP: {
      const auto [even, odd] = qsp_degrees(layers);
      const int n = 2 * layers + 1;
      out->pure.push_back(qsp_chain(n, even, 0, false));
      out->pure.push_back(qsp_chain(n, odd, even + 1, false));
      out->channel.push_back(qsp_chain(n, even, 0, true));
      out->channel.push_back(qsp_chain(n, odd, even + 1, true));
      break;
    }
  }
  return out;
}

const Compiled& compiled(AnsatzKind kind, int layers) {
  thread_local std::map<std::pair<int, int>, std::shared_ptr<const Compiled>> cache;
  const auto key = std::make_pair(static_cast<int>(kind), layers);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, compile(kind, layers)).first;
  return *it->second;
}

void check_domain(AnsatzKind kind, double x) {
  if (!std::isfinite(x) || std::abs(x) > admissible_bound(kind)) {
    throw DomainError("input " + std::to_string(x) + " outside the admissible domain of " + to_string(kind));
  }
}

sim::EvalOptions sim_options(const ModelNoise& noise) {
  sim::EvalOptions o;
  o.angle_offsets = noise.angle_offsets;
  o.channel = noise.channel;
  return o;
}

const std::vector<Circuit>& circuits_for(const CircuitModel& model, const ModelNoise& noise) {
  const Compiled& c = compiled(model.kind, model.layers);
  return noise.channel != nullptr ? c.channel : c.pure;
}

}  // namespace

std::string to_string(AnsatzKind kind) {
  switch (kind) {
    case AnsatzKind::QNN: return "qnn";
    case AnsatzKind::QSP: return "qsp";
    case AnsatzKind::DQC1: return "dqc1";
  }
  return "?";
}

AnsatzKind parse_ansatz_kind(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (lower == "qnn") return AnsatzKind::QNN;
  if (lower == "qsp") return AnsatzKind::QSP;
  if (lower == "dqc1") return AnsatzKind::DQC1;
  throw InvalidConfig("unknown ansatz '" + std::string(text) + "'", "ansatz.kind");
}

int parameter_count(AnsatzKind kind, int layers) {
  return core_parameter_count(kind, layers) + (has_affine(kind) ? 2 : 0);
}

int encoding_count(AnsatzKind kind, int layers) {
  return kind == AnsatzKind::QSP ? 2 * layers - 1 : 2 * layers;
}

int core_parameter_count(AnsatzKind kind, int layers) {
  switch (kind) {
    case AnsatzKind::QNN: return 6 * layers;
    case AnsatzKind::QSP: return 2 * layers + 1;
    case AnsatzKind::DQC1: return 8 * layers + 4;
  }
  return 0;
}

bool has_affine(AnsatzKind kind) { return kind != AnsatzKind::QSP; }

bool is_input_scale(AnsatzKind kind, int index) {
  switch (kind) {
    case AnsatzKind::QNN: return index % 3 == 1;
    case AnsatzKind::QSP: return false;
    case AnsatzKind::DQC1: return index >= 4 && (index - 4) % 8 >= 6;
  }
  return false;
}

std::pair<int, int> qsp_degrees(int layers) {
  // the chain with the even signal count is the even part
  return layers % 2 == 0 ? std::make_pair(layers, layers - 1) : std::make_pair(layers - 1, layers);
}

void InitRange::validate() const {
  if (!(scale_min > 0.0) || !std::isfinite(scale_max)) throw InvalidConfig("must be a positive number", "ansatz.scale_min");
  if (!(scale_max >= scale_min)) throw InvalidConfig("must be >= scale_min", "ansatz.scale_max");
}

CircuitModel build(AnsatzKind kind, int layers, std::uint64_t seed, const InitRange& init) {
  if (layers < 1) throw InvalidConfig("layer count must be at least 1", "ansatz.layers");
  init.validate();
  CircuitModel m;
  m.kind = kind;
  m.layers = layers;
  auto rng = make_rng(seed, {fnv1a("ansatz-init")});
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> scale(init.scale_min, init.scale_max);
  const int n = core_parameter_count(kind, layers);
  m.theta.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    m.theta[static_cast<std::size_t>(i)] = is_input_scale(kind, i) ? scale(rng) : angle(rng);
  }
  if (has_affine(kind)) m.affine = Affine{};
  return m;
}

void validate(const CircuitModel& model) {
  if (model.layers < 1) throw InvalidInput("model has no layers");
  if (static_cast<int>(model.theta.size()) != core_parameter_count(model.kind, model.layers)) {
    throw InvalidInput(to_string(model.kind) + " with L=" + std::to_string(model.layers) + " needs " +
                       std::to_string(core_parameter_count(model.kind, model.layers)) + " angles, got " +
                       std::to_string(model.theta.size()));
  }
  if (model.affine.has_value() != has_affine(model.kind)) throw InvalidInput("affine map presence does not match ansatz");
  for (double t : model.theta)
    if (!std::isfinite(t)) throw InvalidInput("non-finite parameter");
  if (model.affine && (!std::isfinite(model.affine->a) || !std::isfinite(model.affine->b))) {
    throw InvalidInput("non-finite affine parameter");
  }
}

double admissible_bound(AnsatzKind kind) { return kind == AnsatzKind::QSP ? 1.0 - kQspEdge : 1.0; }

double clamp_to_domain(AnsatzKind kind, double x) {
  const double bound = admissible_bound(kind);
  return std::clamp(x, -bound, bound);
}

std::size_t flat_size(const CircuitModel& model) { return model.theta.size() + (model.affine ? 2 : 0); }

std::vector<double> flat_parameters(const CircuitModel& model) {
  std::vector<double> flat = model.theta;
  if (model.affine) {
    flat.push_back(model.affine->a);
    flat.push_back(model.affine->b);
  }
  return flat;
}

void set_flat_parameters(CircuitModel& model, std::span<const double> flat) {
  if (flat.size() != flat_size(model)) throw InvalidInput("flat parameter length mismatch");
  std::copy(flat.begin(), flat.begin() + static_cast<std::ptrdiff_t>(model.theta.size()), model.theta.begin());
  if (model.affine) {
    model.affine->a = flat[model.theta.size()];
    model.affine->b = flat[model.theta.size() + 1];
  }
}

ModelJet model_jet(const CircuitModel& model, double x, const ModelNoise& noise) {
  check_domain(model.kind, x);
  ModelJet out;
  const auto opts = sim_options(noise);
  for (const auto& c : circuits_for(model, noise)) {
    const sim::Jet j = sim::evaluate(c, model.theta, x, opts);
    out.raw_value += j.value;
    out.raw_slope += j.slope;
  }
  const Affine aff = model.affine.value_or(Affine{});
  out.value = aff.a * out.raw_value + aff.b;
  out.slope = aff.a * out.raw_slope;
  return out;
}

ModelJetGradient model_jet_gradient(const CircuitModel& model, double x, const ModelNoise& noise,
                                    bool value_gradient, bool slope_gradient) {
  check_domain(model.kind, x);
  ModelJetGradient out;
  const std::size_t n = model.theta.size();
  if (value_gradient) out.d_value.assign(flat_size(model), 0.0);
  if (slope_gradient) out.d_slope.assign(flat_size(model), 0.0);
  const auto opts = sim_options(noise);
  for (const auto& c : circuits_for(model, noise)) {
    const sim::JetGradient g = sim::differentiate(c, model.theta, x, opts, value_gradient, slope_gradient);
    out.jet.raw_value += g.jet.value;
    out.jet.raw_slope += g.jet.slope;
    for (std::size_t i = 0; i < n; ++i) {
      if (value_gradient) out.d_value[i] += g.d_value[i];
      if (slope_gradient) out.d_slope[i] += g.d_slope[i];
    }
  }
  const Affine aff = model.affine.value_or(Affine{});
  out.jet.value = aff.a * out.jet.raw_value + aff.b;
  out.jet.slope = aff.a * out.jet.raw_slope;
  for (std::size_t i = 0; i < n; ++i) {
    if (value_gradient) out.d_value[i] *= aff.a;
    if (slope_gradient) out.d_slope[i] *= aff.a;
  }
  if (model.affine) {
    if (value_gradient) {
      out.d_value[n] = out.jet.raw_value;
      out.d_value[n + 1] = 1.0;
    }
    if (slope_gradient) {
      out.d_slope[n] = out.jet.raw_slope;
      out.d_slope[n + 1] = 0.0;
    }
  }
  return out;
}

double evaluate(const CircuitModel& model, double x) { return model_jet(model, x).value; }

double eval_qnn(const CircuitModel& model, double x) {
  if (model.kind != AnsatzKind::QNN) throw InvalidInput("eval_qnn called on " + to_string(model.kind));
  return evaluate(model, x);
}

double eval_qsp(const CircuitModel& model, double x) {
  if (model.kind != AnsatzKind::QSP) throw InvalidInput("eval_qsp called on " + to_string(model.kind));
  return evaluate(model, x);
}

double eval_dqc1(const CircuitModel& model, double x) {
  if (model.kind != AnsatzKind::DQC1) throw InvalidInput("eval_dqc1 called on " + to_string(model.kind));
  return evaluate(model, x);
}

double eval_hadamard_test(const CircuitModel& model, double x) {
  if (model.kind != AnsatzKind::QSP) throw InvalidInput("Hadamard-test readout exists only for QSP");
  check_domain(model.kind, x);
  double total = 0.0;
  sim::EvalOptions opts;
  opts.force_density = true;
  for (const auto& c : compiled(model.kind, model.layers).channel) total += sim::evaluate(c, model.theta, x, opts).value;
  return total;
}

std::string to_json_text(const CircuitModel& model) {
  nlohmann::json j;
  j["format"] = "vqint-model/1";
  j["kind"] = to_string(model.kind);
  j["layers"] = model.layers;
  j["theta"] = model.theta;
  if (model.affine) {
    j["affine"] = {{"a", model.affine->a}, {"b", model.affine->b}};
  } else {
    j["affine"] = nullptr;
  }
  return j.dump(2);
}

CircuitModel model_from_json_text(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("model document is not valid JSON: ") + e.what());
  }
  try {
    CircuitModel m;
    m.kind = parse_ansatz_kind(j.at("kind").get<std::string>());
    m.layers = j.at("layers").get<int>();
    m.theta = j.at("theta").get<std::vector<double>>();
    if (j.contains("affine") && !j["affine"].is_null()) {
      m.affine = Affine{j["affine"].at("a").get<double>(), j["affine"].at("b").get<double>()};
    }
    validate(m);
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed model document: ") + e.what());
  }
}

}  // namespace vqint
