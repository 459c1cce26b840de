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

#include "vqint/trainer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include <spdlog/spdlog.h>

#include "vqint/errors.hpp"
#include "vqint/seeding.hpp"

namespace vqint {

namespace {

constexpr double kDivergenceFactor = 1e6;

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

// Averaged objective over the noise realizations of one epoch.
BatchObjective epoch_objective(const CircuitModel& model, std::span<const double> xs, std::span<const double> ys,
                               const LossConfig& loss, const NoiseConfig& noise,
                               const std::vector<ComplexMatrix>& kraus, std::uint64_t seed, int epoch) {
  if (noise.inert()) return batch_objective(model, xs, ys, loss, {});
  if (noise.kind != NoiseKind::GateError) {
    ModelNoise mn;
    mn.channel = &kraus;
    return batch_objective(model, xs, ys, loss, mn);
  }
  const int r_count = noise.effective_realizations();
  BatchObjective total;
  total.gradient.assign(flat_size(model), 0.0);
  for (int r = 0; r < r_count; ++r) {
    const auto offsets = angle_offsets(
        model.theta.size(), noise.strength,
        derive_seed(seed, {fnv1a("train-noise"), static_cast<std::uint64_t>(epoch), static_cast<std::uint64_t>(r)}));
    ModelNoise mn;
    mn.angle_offsets = offsets;
    const BatchObjective one = batch_objective(model, xs, ys, loss, mn);
    total.loss += one.loss;
    for (std::size_t i = 0; i < total.gradient.size(); ++i) total.gradient[i] += one.gradient[i];
  }
  total.loss /= r_count;
  for (double& g : total.gradient) g /= r_count;
  return total;
}

}  // namespace

void OptimizerConfig::validate() const {
  if (!(lr > 0.0) || !std::isfinite(lr)) throw InvalidConfig("must be > 0", "optimizer.lr");
  if (!(beta1 >= 0.0 && beta1 < 1.0)) throw InvalidConfig("must lie in [0, 1)", "optimizer.beta1");
  if (!(beta2 >= 0.0 && beta2 < 1.0)) throw InvalidConfig("must lie in [0, 1)", "optimizer.beta2");
  if (!(eps > 0.0)) throw InvalidConfig("must be > 0", "optimizer.eps");
  if (epochs < 0) throw InvalidConfig("must be >= 0", "optimizer.epochs");
  if (batch_size < 0) throw InvalidConfig("must be >= 0", "optimizer.batch_size");
}

AdamState AdamState::fresh(std::size_t n, const OptimizerConfig& cfg) {
  AdamState s;
  s.m.assign(n, 0.0);
  s.v.assign(n, 0.0);
  s.lr = cfg.lr;
  s.beta1 = cfg.beta1;
  s.beta2 = cfg.beta2;
  s.eps = cfg.eps;
  return s;
}

void adam_step(std::vector<double>& params, std::span<const double> grads, AdamState& state) {
  if (grads.size() != params.size() || state.m.size() != params.size() || state.v.size() != params.size()) {
    throw InvalidInput("Adam state, parameter and gradient lengths differ");
  }
  for (std::size_t i = 0; i < grads.size(); ++i) {
    if (!std::isfinite(grads[i])) {
      throw NumericalError("non-finite gradient component " + std::to_string(i) + " at step " +
                           std::to_string(state.t + 1));
    }
  }
  ++state.t;
  const double c1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.t));
  const double c2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.t));
  for (std::size_t i = 0; i < params.size(); ++i) {
    state.m[i] = state.beta1 * state.m[i] + (1.0 - state.beta1) * grads[i];
    state.v[i] = state.beta2 * state.v[i] + (1.0 - state.beta2) * grads[i] * grads[i];
    const double m_hat = state.m[i] / c1;
    const double v_hat = state.v[i] / c2;
    params[i] -= state.lr * m_hat / (std::sqrt(v_hat) + state.eps);
  }
}

std::string to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Completed: return "completed";
    case RunStatus::Diverged: return "diverged";
    case RunStatus::NumericalFailure: return "numerical_failure";
  }
  return "?";
}

BatchObjective batch_objective(const CircuitModel& model, std::span<const double> xs, std::span<const double> targets,
                               const LossConfig& loss, const ModelNoise& noise) {
  const std::size_t n = xs.size();
  std::vector<double> q(n);
  std::vector<std::vector<double>> jac(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto g = model_jet_gradient(model, xs[i], noise, false, true);
    q[i] = g.jet.slope;
    jac[i] = std::move(g.d_slope);
  }
  const LossValue lv = compute_loss(loss, q, targets);
  BatchObjective out;
  out.loss = lv.value;
  out.gradient.assign(flat_size(model), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = lv.gradient[i];
    for (std::size_t k = 0; k < out.gradient.size(); ++k) out.gradient[k] += u * jac[i][k];
  }
  return out;
}

TrainingRun train(const CircuitModel& model, const SampleSet& samples, const LossConfig& loss,
                  const OptimizerConfig& opt, std::uint64_t seed, double target_scale) {
  return train_noise_aware(model, samples, loss, opt, NoiseConfig{}, seed, target_scale);
}

TrainingRun train_noise_aware(const CircuitModel& model, const SampleSet& samples, const LossConfig& loss,
                              const OptimizerConfig& opt, const NoiseConfig& noise, std::uint64_t seed,
                              double target_scale) {
  const auto start = std::chrono::steady_clock::now();
  validate(model);
  loss.validate();
  opt.validate();
  noise.validate();
  if (samples.points.empty() || samples.points.size() != samples.targets.size()) {
    throw InvalidInput("training needs a non-empty sample set with one target per point");
  }

  std::vector<double> ys(samples.targets);
  for (double& y : ys) y *= target_scale;
  const std::vector<double>& xs = samples.points;
  std::vector<ComplexMatrix> kraus;
  if (!noise.inert() && noise.kind != NoiseKind::GateError) kraus = channel_ops(noise.kind, noise.strength);

  TrainingRun run;
  run.model = model;
  run.history.reserve(static_cast<std::size_t>(opt.epochs));
  CircuitModel current = model;
  std::vector<double> params = flat_parameters(current);
  AdamState state = AdamState::fresh(params.size(), opt);

  const std::size_t n = xs.size();
  const bool mini = opt.batch_size > 0 && static_cast<std::size_t>(opt.batch_size) < n;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> bx, by;

  try {
    for (int epoch = 0; epoch < opt.epochs; ++epoch) {
      std::span<const double> batch_x = xs, batch_y = ys;
      if (mini) {
        auto rng = make_rng(seed, {fnv1a("batch"), static_cast<std::uint64_t>(epoch)});
        std::shuffle(order.begin(), order.end(), rng);
        const auto b = static_cast<std::size_t>(opt.batch_size);
        bx.resize(b);
        by.resize(b);
        for (std::size_t i = 0; i < b; ++i) {
          bx[i] = xs[order[i]];
          by[i] = ys[order[i]];
        }
        batch_x = bx;
        batch_y = by;
      }
      const BatchObjective obj = epoch_objective(current, batch_x, batch_y, loss, noise, kraus, seed, epoch);
      if (!std::isfinite(obj.loss)) throw NumericalError("non-finite loss at epoch " + std::to_string(epoch));
      run.history.push_back(obj.loss);
      if (epoch == 0) {
        run.initial_loss = obj.loss;
        run.best_loss = obj.loss;
      }
      if (obj.loss <= run.best_loss) {
        run.best_loss = obj.loss;
        run.best_epoch = epoch;
        run.model = current;
      }
      if (run.initial_loss > 0.0 && obj.loss > kDivergenceFactor * run.initial_loss) {
        run.status = RunStatus::Diverged;
        run.diagnostic = "loss " + std::to_string(obj.loss) + " exceeded 1e6 x the initial loss at epoch " +
                         std::to_string(epoch);
        spdlog::warn("training aborted: {}", run.diagnostic);
        break;
      }
      if (!all_finite(obj.gradient)) {
        throw NumericalError("non-finite gradient at epoch " + std::to_string(epoch));
      }
      adam_step(params, obj.gradient, state);
      set_flat_parameters(current, params);
    }
  } catch (const NumericalError& e) {
    run.status = RunStatus::NumericalFailure;
    run.diagnostic = e.what();
    spdlog::warn("training aborted: {}", run.diagnostic);
  }
  run.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return run;
}

}  // namespace vqint
