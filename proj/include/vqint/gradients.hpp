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

#include <vector>

#include "vqint/ansatz.hpp"

namespace vqint {

struct GradientReport {
  std::vector<double> d_theta;  ///< dQ/dparameter over the flat parameter vector
  double d_x = 0.0;             ///< dQ/dx
};

/// q(x) = dQ/dx including the affine scale (and the signal chain rule for QSP).
double input_derivative(const CircuitModel& model, double x);

/// upstream * dQ/dparameter over the flat parameter vector, by reverse mode.
std::vector<double> param_gradient(const CircuitModel& model, double x, double upstream);

/// Parameter-shift estimate of dQ/dtheta[index]. Angles use the two-point
/// rule matching the output's frequency in that angle; input scales shift the
/// product theta * x and need x != 0. Throws UnsupportedParameter for the
/// affine entries or for an input scale at x = 0.
double psr_gradient(const CircuitModel& model, double x, int index);

GradientReport gradient_report(const CircuitModel& model, double x);

}  // namespace vqint
