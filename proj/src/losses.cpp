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

#include "vqint/losses.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

#include "vqint/errors.hpp"

namespace vqint {

namespace {

void check_lengths(std::span<const double> q, std::span<const double> f, std::size_t min_len = 1) {
  if (q.size() != f.size()) throw InvalidInput("prediction and target lengths differ");
  if (q.size() < min_len) throw InvalidInput("batch too short for this loss");
}

std::vector<double> softmax(std::span<const double> v) {
  const double top = *std::max_element(v.begin(), v.end());
  std::vector<double> p(v.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    p[i] = std::exp(v[i] - top);
    sum += p[i];
  }
  for (double& x : p) x /= sum;
  return p;
}

std::vector<double> log_softmax(std::span<const double> v) {
  const double top = *std::max_element(v.begin(), v.end());
  double sum = 0.0;
  for (double x : v) sum += std::exp(x - top);
  const double lse = top + std::log(sum);
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] - lse;
  return out;
}

}  // namespace

std::string to_string(LossKind kind) {
  switch (kind) {
    case LossKind::MSE: return "mse";
    case LossKind::Chi2: return "chi2";
    case LossKind::LogCosh: return "logcosh";
    case LossKind::MseKL: return "mse+kl";
  }
  return "?";
}

LossKind parse_loss_kind(std::string_view text) {
  std::string key;
  for (unsigned char c : text)
    if (c != '-' && c != '_' && c != ' ') key.push_back(static_cast<char>(std::tolower(c)));
  if (key == "mse") return LossKind::MSE;
  if (key == "chi2" || key == "chisquare") return LossKind::Chi2;
  if (key == "logcosh") return LossKind::LogCosh;
  if (key == "mse+kl" || key == "msekl") return LossKind::MseKL;
  throw InvalidConfig("unknown loss '" + std::string(text) + "'", "loss.kind");
}

void LossConfig::validate() const {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InvalidConfig("must be finite and >= 0", "loss.lambda");
  if (!(eps > 0.0) || !std::isfinite(eps)) throw InvalidConfig("must be finite and > 0", "loss.eps");
}

LossValue mse(std::span<const double> q, std::span<const double> f) {
  check_lengths(q, f);
  const double n = static_cast<double>(q.size());
  LossValue out;
  out.gradient.resize(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double r = q[i] - f[i];
    out.value += r * r;
    out.gradient[i] = 2.0 * r / n;
  }
  out.value /= n;
  return out;
}

LossValue chi2(std::span<const double> q, std::span<const double> f, double eps) {
  check_lengths(q, f);
  if (!(eps > 0.0)) throw InvalidInput("chi-square regularizer must be positive");
  const double n = static_cast<double>(q.size());
  LossValue out;
  out.gradient.resize(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double r = q[i] - f[i];
    const double w = 1.0 / (std::abs(f[i]) + eps);
    out.value += r * r * w;
    out.gradient[i] = 2.0 * r * w / n;
  }
  out.value /= n;
  return out;
}

double log_cosh_scalar(double r) {
  const double a = std::abs(r);
  if (a < 1.0) {
    // cosh r = 1 + 2 sinh^2(r/2)
    const double s = std::sinh(0.5 * a);
    return std::log1p(2.0 * s * s);
  }
  return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

LossValue log_cosh(std::span<const double> q, std::span<const double> f) {
  check_lengths(q, f);
  const double n = static_cast<double>(q.size());
  LossValue out;
  out.gradient.resize(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double r = q[i] - f[i];
    out.value += log_cosh_scalar(r);
    out.gradient[i] = std::tanh(r) / n;
  }
  out.value /= n;
  return out;
}

LossValue mse_kl(std::span<const double> q, std::span<const double> f, double lambda) {
  check_lengths(q, f, 2);
  if (!(lambda >= 0.0)) throw InvalidInput("KL weight must be non-negative");
  LossValue out = mse(q, f);
  if (lambda == 0.0) return out;
  const auto p = softmax(f);
  const auto phat = softmax(q);
  const auto log_p = log_softmax(f);
  const auto log_phat = log_softmax(q);
  double kl = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    kl += p[i] * (log_p[i] - log_phat[i]);
    out.gradient[i] += lambda * (phat[i] - p[i]);
  }
  out.value += lambda * kl;
  return out;
}

LossValue compute_loss(const LossConfig& cfg, std::span<const double> q, std::span<const double> f) {
  switch (cfg.kind) {
    case LossKind::MSE: return mse(q, f);
    case LossKind::Chi2: return chi2(q, f, cfg.eps);
    case LossKind::LogCosh: return log_cosh(q, f);
    case LossKind::MseKL: return mse_kl(q, f, cfg.lambda);
  }
  throw InvalidInput("unknown loss kind");
}

}  // namespace vqint
