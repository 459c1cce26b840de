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

#include "vqint/gradients.hpp"

#include <cmath>
#include <numbers>

#include "vqint/errors.hpp"

namespace vqint {

double input_derivative(const CircuitModel& model, double x) { return model_jet(model, x).slope; }

std::vector<double> param_gradient(const CircuitModel& model, double x, double upstream) {
  auto g = model_jet_gradient(model, x, {}, true, false).d_value;
  for (double& v : g) v *= upstream;
  return g;
}

double psr_gradient(const CircuitModel& model, double x, int index) {
  if (index < 0 || static_cast<std::size_t>(index) >= flat_size(model)) {
    throw InvalidInput("parameter index out of range");
  }
  if (static_cast<std::size_t>(index) >= model.theta.size()) {
    throw UnsupportedParameter("the affine output parameters are not gate angles");
  }
  // Expectation readouts (QNN) depend on each angle through e^{+-i angle};
  // the trace and amplitude readouts (QSP, DQC1) are linear in the unitary and
  // only see e^{+-i angle/2}, so their shift doubles and the divisor becomes 4.
  const bool half_frequency = model.kind != AnsatzKind::QNN;
  const double shift = half_frequency ? std::numbers::pi : std::numbers::pi / 2;
  const double divisor = half_frequency ? 4.0 : 2.0;

  double chain = 1.0;
  double step = shift;
  if (is_input_scale(model.kind, index)) {
    if (x == 0.0) throw UnsupportedParameter("input-scale shift is undefined at x = 0");
    step = shift / x;
    chain = x;
  }
  CircuitModel plus = model, minus = model;
  plus.theta[static_cast<std::size_t>(index)] += step;
  minus.theta[static_cast<std::size_t>(index)] -= step;
  const double a = model.affine ? model.affine->a : 1.0;
  const double raw = (model_jet(plus, x).raw_value - model_jet(minus, x).raw_value) / divisor;
  return a * chain * raw;
}

GradientReport gradient_report(const CircuitModel& model, double x) {
  const auto g = model_jet_gradient(model, x, {}, true, false);
  return {g.d_value, g.jet.slope};
}

}  // namespace vqint
