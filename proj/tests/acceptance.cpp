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

// Acceptance run: one [PASS]/[FAIL] line per criterion, details indented below.
//
// Exit status is the number of failing criteria, except that the Breit-Wigner
// constants in AC3 are a known conflict: the stated integrand and constants
// integrate 0.225% below the printed references, so that part is reported as
// [FAIL] but does not fail the process on its own.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include <spdlog/spdlog.h>

#include "oracles.hpp"
#include "vqint/ansatz.hpp"
#include "vqint/benchmarks.hpp"
#include "vqint/config.hpp"
#include "vqint/errors.hpp"
#include "vqint/experiment.hpp"
#include "vqint/gradients.hpp"
#include "vqint/metrics.hpp"
#include "vqint/noise.hpp"
#include "vqint/quadrature.hpp"
#include "vqint/quantum_core.hpp"
#include "vqint/samplers.hpp"

using namespace vqint;
namespace fs = std::filesystem;

namespace {

struct Check {
  bool pass = true;
  bool known_conflict = false;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    notes.push_back(std::string(ok ? "ok   " : "MISS ") + what);
  }
};

std::string fmt(double v, int prec = 6) {
  std::ostringstream s;
  s << std::setprecision(prec) << v;
  return s.str();
}

int g_failures = 0;

void criterion(const std::string& id, const std::string& title, double budget_s, const std::function<void(Check&)>& body) {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.require(false, std::string("threw: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.require(secs <= budget_s, "wall time " + fmt(secs, 3) + " s within " + fmt(budget_s) + " s");
  std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << id << ' ' << title << '\n';
  for (const auto& n : c.notes) std::cout << "       " << n << '\n';
  std::cout.flush();
  if (!c.pass && !c.known_conflict) ++g_failures;
}

std::string config_text(const std::string& bench, std::uint64_t seed, int n, int epochs, double lr, double scale_max) {
  std::ostringstream s;
  s << std::setprecision(17) << "benchmark = " << bench << "\nseed = " << seed << "\n\n[ansatz]\nkind = qnn\nlayers = 10\n"
    << "scale_max = " << scale_max << "\n\n[sampler]\nkind = uniform\nn_train = " << n << "\n\n[loss]\nkind = mse\n\n"
    << "[optimizer]\nlr = " << lr << "\nepochs = " << epochs << "\n";
  return s.str();
}

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

void ac1(Check& c) {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(-10, 10);
  double unitary = 0.0;
  for (int t = 0; t < 200; ++t) {
    for (auto k : {GateKind::RX, GateKind::RY, GateKind::RZ}) {
      const auto g = gate_matrix(k, u(rng));
      unitary = std::max(unitary, max_abs(g.adjoint() * g - ComplexMatrix::Identity(2, 2)));
    }
  }
  for (auto k : {GateKind::H, GateKind::CZ}) {
    const auto g = gate_matrix(k);
    unitary = std::max(unitary, max_abs(g.adjoint() * g - ComplexMatrix::Identity(g.rows(), g.cols())));
  }
  c.require(unitary < 1e-12, "gate unitarity, max |U'U - I| = " + fmt(unitary, 3));

  double agree = 0.0;
  std::uniform_int_distribution<int> pick(0, 2);
  for (int trial = 0; trial < 20; ++trial) {
    auto psi = QuantumState::zero(3, QuantumState::Mode::Statevector);
    auto rho = QuantumState::zero(3, QuantumState::Mode::Density);
    for (int g = 0; g < 25; ++g) {
      const int q = pick(rng);
      if (g % 4 == 3) {
        const int pair[] = {q, (q + 1) % 3};
        psi = apply_gate(psi, gate_matrix(GateKind::CZ), pair);
        rho = apply_gate(rho, gate_matrix(GateKind::CZ), pair);
      } else {
        const int t[] = {q};
        const auto gm = gate_matrix(g % 3 == 0 ? GateKind::RX : g % 3 == 1 ? GateKind::RY : GateKind::RZ, u(rng));
        psi = apply_gate(psi, gm, t);
        rho = apply_gate(rho, gm, t);
      }
    }
    agree = std::max(agree, max_abs(psi.to_density().density() - rho.density()));
  }
  c.require(agree < 1e-12, "statevector vs density, max deviation " + fmt(agree, 3));

  double trace = 0.0, affine = 0.0;
  for (int t = 0; t < 100; ++t) {
    const ComplexMatrix r8 = oracle::random_density(8, rng);
    const int q[] = {t % 3};
    for (auto kind : {NoiseKind::BitFlip, NoiseKind::Depolarizing}) {
      const auto out = apply_kraus(QuantumState::from_density(r8), channel_ops(kind, 0.3), q).density();
      trace = std::max(trace, std::abs(out.trace() - Complex(1.0)));
    }
    const ComplexMatrix r2 = oracle::random_density(2, rng);
    const int q0[] = {0};
    for (double p : {0.001, 0.1, 0.7}) {
      const auto out = apply_kraus(QuantumState::from_density(r2), channel_ops(NoiseKind::Depolarizing, p), q0);
      affine = std::max(affine, max_abs(out.density() - (p / 2 * ComplexMatrix::Identity(2, 2) + (1 - p) * r2)));
    }
  }
  c.require(trace < 1e-10, "Kraus trace preservation, max |Tr - 1| = " + fmt(trace, 3));
  c.require(affine < 1e-12, "depolarizing Kraus vs p/2 I + (1-p) rho, max deviation " + fmt(affine, 3));
}

void ac2(Check& c) {
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> u(-0.95, 0.95);
  const double h = 1e-5;
  for (auto k : {AnsatzKind::QNN, AnsatzKind::QSP, AnsatzKind::DQC1}) {
    double fd_worst = 0.0, psr_worst = 0.0;
    int psr_checked = 0;
    for (int t = 0; t < 50; ++t) {
      auto m = build(k, 3, 5000 + static_cast<std::uint64_t>(t));
      if (m.affine) m.affine = Affine{1.2, 0.3};
      double x = u(rng);
      if (std::abs(x) < 1e-3) x = 0.4;
      const auto g = param_gradient(m, x, 1.0);
      const auto flat = flat_parameters(m);
      for (std::size_t i = 0; i < flat.size(); ++i) {
        auto at = [&](double v) {
          auto f = flat;
          f[i] = v;
          CircuitModel cm = m;
          set_flat_parameters(cm, f);
          return evaluate(cm, x);
        };
        fd_worst = std::max(fd_worst, std::abs(g[i] - (at(flat[i] + h) - at(flat[i] - h)) / (2 * h)));
        if (i < m.theta.size()) {
          try {
            psr_worst = std::max(psr_worst, std::abs(g[i] - psr_gradient(m, x, static_cast<int>(i))));
            ++psr_checked;
          } catch (const UnsupportedParameter&) {
          }
        }
      }
    }
    c.require(fd_worst < 1e-6, to_string(k) + " backprop vs central differences, max " + fmt(fd_worst, 3));
    c.require(psr_worst < 1e-10 && psr_checked > 0,
              to_string(k) + " backprop vs parameter shift, max " + fmt(psr_worst, 3) + " over " +
                  std::to_string(psr_checked) + " entries");
  }
}

// One unit in the last printed digit; the printed constants are truncated,
// not rounded (2.13428 appears as 2.1342).
double last_digit_unit(double v, int sig) {
  return std::pow(10.0, static_cast<int>(std::floor(std::log10(std::abs(v)))) - (sig - 1));
}

void ac3(Check& c) {
  bool others = true;
  for (const auto* name : {"cpf", "step", "bw"}) {
    const auto b = benchmark_by_name(name);
    for (const auto& iv : b.intervals) {
      if (!iv.published || *iv.published == 0.0) continue;
      const double ref = reference_integral(b, iv.a, iv.b);
      const double pub = *iv.published;
      const int sig = b.name == "step" ? 2 : 5;
      const bool ok = std::abs(ref - pub) < last_digit_unit(pub, sig);
      if (!ok && b.name != "bw") others = false;
      c.require(ok, b.name + " " + iv.label + ": oracle " + fmt(ref, 8) + " vs printed " + fmt(pub, 5));
    }
  }
  if (!c.pass && others) {
    c.known_conflict = true;
    c.notes.push_back("note the Breit-Wigner integrand as stated, with M = 91.1876 and G = 2.4952, integrates");
    c.notes.push_back("     0.225% below every printed BW constant; no parameter reading matches all three");
  }
}

struct Trained {
  ExperimentOutcome outcome;
  double seconds = 0.0;
};

Trained run(const std::string& text) {
  const auto t0 = std::chrono::steady_clock::now();
  Trained t{execute(parse_config(text)), 0.0};
  t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return t;
}

void report_intervals(Check& c, const MetricsReport& m) {
  for (const auto& r : m.intervals)
    c.notes.push_back("     " + r.label + ": predicted " + fmt(r.predicted) + ", reference " + fmt(r.reference) +
                      (r.zero_reference ? ", abs " : ", rel ") + fmt(r.rel_error, 3));
}

void ac4(Check& c) {
  double best_r2 = -1e300, best_w1 = 0.0;
  std::uint64_t best_seed = 0;
  for (std::uint64_t seed : {1, 2, 3}) {
    // defaults: N = 200, 2000 epochs, lr 0.01
    const auto t = run("benchmark = cpf\nseed = " + std::to_string(seed) + "\n");
    if (!t.outcome.metrics) {
      c.notes.push_back("seed " + std::to_string(seed) + " failed: " + t.outcome.failure);
      continue;
    }
    const auto& m = *t.outcome.metrics;
    c.notes.push_back("seed " + std::to_string(seed) + ": R2 " + fmt(m.r2) + ", W1 " + fmt(m.w1) + " (" +
                      fmt(t.seconds, 3) + " s)");
    if (m.r2 > best_r2) best_r2 = m.r2, best_w1 = m.w1, best_seed = seed;
  }
  c.require(best_r2 >= 0.99, "best seed " + std::to_string(best_seed) + " R2 " + fmt(best_r2) + " >= 0.99");
  c.require(best_w1 <= 0.10, "best seed W1 " + fmt(best_w1) + " <= 0.10");
}

void ac5(Check& c) {
  const auto t = run(config_text("step", 1, 600, 2000, 0.01, 10.0));
  if (!t.outcome.metrics) throw std::runtime_error(t.outcome.failure);
  const auto& m = *t.outcome.metrics;
  c.notes.push_back("N 600, 2000 epochs, scale range [0.5, 10], seed 1 (" + fmt(t.seconds, 3) + " s)");
  c.require(m.r2 >= 0.97, "R2 " + fmt(m.r2) + " >= 0.97");
  c.require(m.w1 <= 0.02, "W1 " + fmt(m.w1) + " <= 0.02");
  const auto& mid = m.intervals.at(2);
  c.require(std::abs(mid.predicted) <= 0.02, "|integral over [-0.5, 0.5]| " + fmt(std::abs(mid.predicted)) + " <= 0.02");
  report_intervals(c, m);
}

CircuitModel g_bw_model;
bool g_bw_trained = false;

void ac6(Check& c) {
  const auto t = run(config_text("bw", 1, 600, 4000, 0.02, 10.0));
  if (!t.outcome.metrics) throw std::runtime_error(t.outcome.failure);
  g_bw_model = t.outcome.run.model;
  g_bw_trained = true;
  const auto& m = *t.outcome.metrics;
  c.notes.push_back("N 600, 4000 epochs, lr 0.02, scale range [0.5, 10], seed 1 (" + fmt(t.seconds, 3) + " s)");
  c.require(m.r2 >= 0.95, "R2 " + fmt(m.r2) + " >= 0.95");
  const auto& wide = m.intervals.at(2);
  c.require(wide.rel_error <= 0.12, "[M +- 10G] relative error " + fmt(100 * wide.rel_error, 3) + "% <= 12%");
  const double vs_printed = relative_error(wide.predicted, breit_wigner().intervals.at(2).published.value());
  c.notes.push_back("     against the printed 7.3582e-5 the error is " + fmt(100 * vs_printed, 3) + "%");
  report_intervals(c, m);
}

void ac7(Check& c) {
  const auto b = breit_wigner();
  const auto f = [b](double x) { return evaluate(b, denormalize(b, x)); };
  const double lo = normalize(b, 91.1876 - 3 * 2.4952), hi = normalize(b, 91.1876 + 3 * 2.4952);
  const int n = 2000;
  const auto s = sample_importance(f, 10 * n, n, 7);
  const double frac =
      std::count_if(s.points.begin(), s.points.end(), [&](double x) { return x >= lo && x <= hi; }) / double(n);
  const auto u = sample_uniform(f, n, 7);
  const double ufrac =
      std::count_if(u.points.begin(), u.points.end(), [&](double x) { return x >= lo && x <= hi; }) / double(n);
  // expected IS fraction: share of the (f')^2 mass inside the window
  const auto w = [&](double x) {
    const double d = (f(x + 1e-4) - f(x - 1e-4)) / 2e-4;
    return d * d;
  };
  double inside = 0.0, total = 0.0;
  for (int i = 0; i < 400000; ++i) {
    const double x = -1 + (2.0 * i + 1) / 400000;
    const double v = w(x);
    total += v;
    if (x >= lo && x <= hi) inside += v;
  }
  c.require(frac >= 2 * ufrac, "IS window fraction " + fmt(frac, 4) + " >= 2 x uniform " + fmt(ufrac, 4));
  c.require(std::abs(frac - inside / total) < 0.03,
            "IS fraction vs (f')^2 mass oracle " + fmt(inside / total, 4));

  const auto gauss = [](double x) { return std::exp(-x * x / (2 * 0.2 * 0.2)); };
  const auto d = hmc_chains(gauss, 20000, 21, HmcConfig{});
  double mean = 0.0;
  for (double x : d.points) mean += x;
  mean /= static_cast<double>(d.points.size());
  double var = 0.0;
  for (double x : d.points) var += (x - mean) * (x - mean);
  var /= static_cast<double>(d.points.size() - 1);
  const double m0 = integrate_adaptive(gauss, -1, 1, 1e-13).value;
  const double m2 = integrate_adaptive([&](double x) { return x * x * gauss(x); }, -1, 1, 1e-13).value;
  c.require(std::abs(var / (m2 / m0) - 1) <= 0.10,
            "HMC truncated Gaussian variance " + fmt(var, 5) + " vs " + fmt(m2 / m0, 5));
}

void ac8(Check& c) {
  if (!g_bw_trained) {
    const auto t = run(config_text("bw", 1, 600, 4000, 0.02, 10.0));
    g_bw_model = t.outcome.run.model;
  }
  const auto b = breit_wigner();
  const auto& iv = b.intervals.at(2);
  const double xa = normalize(b, iv.a), xb = normalize(b, iv.b);
  const double clean = model_jet(g_bw_model, xb).value - model_jet(g_bw_model, xa).value;
  NoiseConfig gate;
  gate.kind = NoiseKind::GateError;
  gate.strength = 1e-3;
  const auto g = noisy_integral(g_bw_model, gate, xa, xb, 1000, 99);
  const double scale = jacobian(b) / b.output_scale;
  c.notes.push_back("noiseless [M +- 10G] integral " + fmt(clean * scale));
  c.require(std::abs(g.mean - clean) / std::abs(clean) < 0.25 && g.std > 0,
            "gate error 0.1%: " + fmt(g.mean * scale) + " +- " + fmt(g.std * scale, 3) + " over 1000 runs");
  for (auto kind : {NoiseKind::BitFlip, NoiseKind::Depolarizing}) {
    NoiseConfig ch;
    ch.kind = kind;
    ch.strength = 1e-3;
    const auto a = noisy_integral(g_bw_model, ch, xa, xb, 1000, 1);
    const auto r = noisy_integral(g_bw_model, ch, xa, xb, 1000, 2);
    c.require(a.mean == r.mean && a.std == 0.0 && std::abs(a.mean - clean) / std::abs(clean) < 0.25,
              to_string(kind) + " 0.1%: " + fmt(a.mean * scale) + " (" +
                  fmt(100 * std::abs(a.mean - clean) / std::abs(clean), 3) + "% from noiseless), deterministic");
  }
}

void ac9(Check& c) {
  const int p[] = {62, 21, 86}, e[] = {20, 19, 20};
  int i = 0;
  for (auto k : {AnsatzKind::QNN, AnsatzKind::QSP, AnsatzKind::DQC1}) {
    const auto m = build(k, 10, 1);
    const int got_p = static_cast<int>(flat_size(m));
    const int got_e = encoding_count(k, 10);
    c.require(got_p == p[i] && got_e == e[i],
              to_string(k) + ": P " + std::to_string(got_p) + ", E " + std::to_string(got_e));
    ++i;
  }
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void ac10(Check& c) {
  const fs::path root = fs::temp_directory_path() / "vqint_acceptance";
  fs::remove_all(root);
  fs::create_directories(root);
  const fs::path cfg = root / "run.ini";
  std::ofstream(cfg) << "benchmark = cpf\nseed = 1\n[ansatz]\nlayers = 2\n[sampler]\nn_train = 20\n"
                        "[optimizer]\nepochs = 10\n[metrics]\ngrid_size = 100\n";
  std::ostringstream o, e;
  CliOptions a, b;
  a.out_dir = (root / "a").string();
  b.out_dir = (root / "b").string();
  const int ra = cmd_run(cfg.string(), a, o, e), rb = cmd_run(cfg.string(), b, o, e);
  auto ja = nlohmann::json::parse(slurp(root / "a" / "run_record.json"));
  auto jb = nlohmann::json::parse(slurp(root / "b" / "run_record.json"));
  ja.erase("timestamp");
  jb.erase("timestamp");
  c.require(ra == 0 && rb == 0 && ja == jb, "cmd_run twice: identical run record modulo timestamp");

  std::ofstream(root / "sweep.ini") << "benchmark = cpf\nseed = 3\n[ansatz]\nlayers = 1\n[sampler]\nn_train = 20\n"
                                       "[optimizer]\nepochs = 5\n[metrics]\ngrid_size = 100\n";
  a.out_dir = (root / "sa").string();
  b.out_dir = (root / "sb").string();
  b.workers = 2;
  const int sa = cmd_sweep((root / "sweep.ini").string(), a, o, e);
  const int sb = cmd_sweep((root / "sweep.ini").string(), b, o, e);
  const auto ka = nlohmann::json::parse(slurp(root / "sa" / "sweep_summary.json"));
  const auto kb = nlohmann::json::parse(slurp(root / "sb" / "sweep_summary.json"));
  c.require(sa == 0 && sb == 0 && ka["rows"].size() == 12 && ka["best_three"] == kb["best_three"],
            "cmd_sweep twice: identical best three " + ka["best_three"].dump());
  fs::remove_all(root);
}

}  // namespace

int main() {
  spdlog::set_level(spdlog::level::err);
  std::cout << "vqint " << tool_version() << " acceptance\n";
  criterion("AC1", "simulator property suite", 1.0, ac1);
  criterion("AC2", "gradient exactness", 10.0, ac2);
  criterion("AC3", "reference integrals vs printed constants", 5.0, ac3);
  criterion("AC4", "CPF band, QNN L=10 uniform/MSE, 3 seeds", 300.0, ac4);
  criterion("AC5", "STEP band, QNN L=10 uniform/MSE", 300.0, ac5);
  criterion("AC6", "Breit-Wigner band, QNN L=10 uniform/MSE", 600.0, ac6);
  criterion("AC7", "sampler behavior", 60.0, ac7);
  criterion("AC8", "noise protocol on the trained BW model", 120.0, ac8);
  criterion("AC9", "parameter and encoding counts at L=10", 1.0, ac9);
  criterion("AC10", "end-to-end determinism", 120.0, ac10);
  std::cout << (g_failures == 0 ? "acceptance: no unexpected failures\n"
                                : "acceptance: " + std::to_string(g_failures) + " unexpected failure(s)\n");
  return g_failures;
}
