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

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vqint {

enum class LossKind { MSE, Chi2, LogCosh, MseKL };

std::string to_string(LossKind kind);
/// "mse", "chi2", "logcosh", "mse+kl" (case-insensitive; '-' and '_' ignored).
LossKind parse_loss_kind(std::string_view text);

struct LossValue {
  double value = 0.0;
  std::vector<double> gradient;  ///< d value / d q_i
};

struct LossConfig {
  LossKind kind = LossKind::MSE;
  double lambda = 0.1;  ///< KL weight
  double eps = 1e-8;    ///< chi-square regularizer

  void validate() const;
};

LossValue mse(std::span<const double> q, std::span<const double> f);
LossValue chi2(std::span<const double> q, std::span<const double> f, double eps);
LossValue log_cosh(std::span<const double> q, std::span<const double> f);
/// MSE + lambda * sum_i p_i log(p_i / p̂_i), p = softmax(f), p̂ = softmax(q).
LossValue mse_kl(std::span<const double> q, std::span<const double> f, double lambda);

LossValue compute_loss(const LossConfig& cfg, std::span<const double> q, std::span<const double> f);

/// log(cosh(r)) without overflow.
double log_cosh_scalar(double r);

}  // namespace vqint
