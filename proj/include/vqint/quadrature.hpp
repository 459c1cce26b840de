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

#include <functional>

namespace vqint {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  ///< summed Gauss/Kronrod discrepancy estimate
  int intervals = 0;
};

/// Globally adaptive 7/15-point Gauss-Kronrod integration: the interval with
/// the largest error estimate is bisected until the summed estimate is below
/// `abs_tol`. Throws QuadratureFailure when `max_intervals` is exhausted or the
/// integrand returns a non-finite value.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, int max_intervals = 4000);

}  // namespace vqint
