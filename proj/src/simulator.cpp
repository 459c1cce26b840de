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

#include "vqint/simulator.hpp"

#include <algorithm>
#include <cmath>

#include "vqint/errors.hpp"

namespace vqint::sim {

namespace {

// Largest buffer: a 3-qubit density matrix, 2^6 entries.
constexpr std::size_t kCapacity = 64;

/// Inline state storage; copies move only the live entries.
class Buf {
 public:
  Buf() {}
  explicit Buf(std::size_t n) : n_(n) { std::fill_n(raw_, 2 * n_, 0.0); }
  Buf(const Buf& o) : n_(o.n_) { std::copy_n(o.raw_, 2 * n_, raw_); }
  Buf& operator=(const Buf& o) {
    n_ = o.n_;
    std::copy_n(o.raw_, 2 * n_, raw_);
    return *this;
  }

  std::size_t size() const { return n_; }
  Complex* data() { return reinterpret_cast<Complex*>(raw_); }
  const Complex* data() const { return reinterpret_cast<const Complex*>(raw_); }
  Complex& operator[](std::size_t i) { return data()[i]; }
  const Complex& operator[](std::size_t i) const { return data()[i]; }
  std::span<Complex> span() { return {data(), n_}; }
  std::span<const Complex> span() const { return {data(), n_}; }

  void add(const Buf& o, double scale) {
    for (std::size_t i = 0; i < n_; ++i) data()[i] += scale * o[i];
  }

 private:
  // raw doubles so construction does not zero the whole capacity
  alignas(Complex) double raw_[2 * kCapacity];
  std::size_t n_ = 0;
};

double real_dot(const Buf& a, const Buf& b) { return kernels::real_inner(a.span(), b.span()); }

using Mat2 = std::array<Complex, 4>;  // row-major

Mat2 adj(const Mat2& m) { return {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}; }
Mat2 transpose(const Mat2& m) { return {m[0], m[2], m[1], m[3]}; }

/// 2x2 block acting on one bit, optionally only where a control bit is set.
/// `zero_off` clears the control-0 subspace instead of leaving it alone (the
/// angle derivatives of a controlled rotation vanish there).
struct BitOp {
  Mat2 m;
  int bit;
  int control_bit;  // -1 for none
  bool zero_off;
};

void apply_bitop(Buf& s, int n_bits, const BitOp& op) {
  const std::size_t tb = std::size_t{1} << (n_bits - 1 - op.bit);
  const std::size_t cb = op.control_bit >= 0 ? std::size_t{1} << (n_bits - 1 - op.control_bit) : 0;
  const std::size_t total = std::size_t{1} << n_bits;
  Complex* d = s.data();
  for (std::size_t i = 0; i < total; ++i) {
    if (i & tb) continue;
    if (cb != 0 && (i & cb) == 0) {
      if (op.zero_off) {
        d[i] = 0.0;
        d[i | tb] = 0.0;
      }
      continue;
    }
    const Complex a = d[i], b = d[i | tb];
    d[i] = op.m[0] * a + op.m[1] * b;
    d[i | tb] = op.m[2] * a + op.m[3] * b;
  }
}

/// Rotation matrix R and its first two angle derivatives on the target qubit.
struct RotationMats {
  Mat2 g, dg, ddg;
};

RotationMats rotation_mats(Axis axis, double angle) {
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  // R = cos I - i sin sigma ; dR = -(i/2) sigma R ; d2R = -R/4
  Mat2 sigma{};
  switch (axis) {
    case Axis::X: sigma = {0.0, 1.0, 1.0, 0.0}; break;
    case Axis::Y: sigma = {0.0, Complex{0, -1}, Complex{0, 1}, 0.0}; break;
    case Axis::Z: sigma = {1.0, 0.0, 0.0, -1.0}; break;
  }
  const Mat2 id{1.0, 0.0, 0.0, 1.0};
  RotationMats out;
  for (std::size_t i = 0; i < 4; ++i) {
    out.g[i] = c * id[i] + Complex{0.0, -s} * sigma[i];
    out.dg[i] = -0.5 * s * id[i] + Complex{0.0, -0.5 * c} * sigma[i];
    out.ddg[i] = -0.25 * out.g[i];
  }
  return out;
}

struct AngleEval {
  double angle;
  double dx;  // d angle / dx
};

AngleEval angle_of(const Rotation& rot, std::span<const double> theta, double x,
                   std::span<const double> offsets) {
  const auto p = static_cast<std::size_t>(rot.param);
  const double off = (rot.param >= 0 && !offsets.empty()) ? offsets[p] : 0.0;
  switch (rot.rule) {
    case AngleRule::Parameter: return {theta[p] + off, 0.0};
    case AngleRule::ScaledInput: return {theta[p] * x + off, theta[p]};
    case AngleRule::Signal: return {-2.0 * std::acos(x), 2.0 / std::sqrt(1.0 - x * x)};
  }
  return {0.0, 0.0};
}

/// Linear maps on the state buffer in either representation. In density mode
/// the buffer is rho row-major over 2n bits: row bits 0..n-1, column bits n..2n-1,
/// and rho * B acts on the column bits as B^T.
class Evolution {
 public:
  Evolution(int n_qubits, bool density) : n_(n_qubits), bits_(density ? 2 * n_qubits : n_qubits), density_(density) {}

  // s <- M s M'^dagger (density) or M s (pure); zero_off marks derivative blocks.
  void left(Buf& s, const Mat2& m, int target, int control, bool zero_off) const {
    apply_bitop(s, bits_, {m, target, control, zero_off});
  }
  void right(Buf& s, const Mat2& b, int target, int control, bool zero_off) const {
    apply_bitop(s, bits_, {transpose(b), target + n_, control >= 0 ? control + n_ : -1, zero_off});
  }

  void forward(Buf& s, const RotationMats& m, int t, int c) const {
    left(s, m.g, t, c, false);
    if (density_) right(s, adj(m.g), t, c, false);
  }

  void adjoint(Buf& s, const RotationMats& m, int t, int c) const {
    left(s, adj(m.g), t, c, false);
    if (density_) right(s, m.g, t, c, false);
  }

  Buf derivative(const Buf& s, const RotationMats& m, int t, int c) const {
    Buf out = s;
    left(out, m.dg, t, c, true);
    if (!density_) return out;
    right(out, adj(m.g), t, c, false);
    Buf other = s;
    left(other, m.g, t, c, false);
    right(other, adj(m.dg), t, c, true);
    out.add(other, 1.0);
    return out;
  }

  Buf second_derivative(const Buf& s, const RotationMats& m, int t, int c) const {
    Buf out = s;
    left(out, m.ddg, t, c, true);
    if (!density_) return out;
    right(out, adj(m.g), t, c, false);
    Buf mid = s;
    left(mid, m.dg, t, c, true);
    right(mid, adj(m.dg), t, c, true);
    out.add(mid, 2.0);
    Buf last = s;
    left(last, m.g, t, c, false);
    right(last, adj(m.ddg), t, c, true);
    out.add(last, 1.0);
    return out;
  }

  Buf derivative_adjoint(const Buf& s, const RotationMats& m, int t, int c) const {
    Buf out = s;
    left(out, adj(m.dg), t, c, true);
    if (!density_) return out;
    right(out, m.g, t, c, false);
    Buf other = s;
    left(other, adj(m.g), t, c, false);
    right(other, m.dg, t, c, true);
    out.add(other, 1.0);
    return out;
  }

  void fixed(Buf& s, const kernels::SmallMatrix& g, std::span<const int> targets, bool adjoint_map) const {
    if (density_) {
      if (adjoint_map) {
        kernels::sandwich(s.span(), n_, g.adjoint(), g, targets);
      } else {
        kernels::sandwich(s.span(), n_, g, g.adjoint(), targets);
      }
    } else {
      kernels::apply(s.span(), n_, adjoint_map ? g.adjoint() : g, targets);
    }
  }

  void channel(Buf& s, std::span<const Mat2> kraus, int qubit, bool adjoint_map) const {
    Buf acc(s.size());
    for (const auto& e : kraus) {
      Buf term = s;
      if (adjoint_map) {
        left(term, adj(e), qubit, -1, false);
        right(term, e, qubit, -1, false);
      } else {
        left(term, e, qubit, -1, false);
        right(term, adj(e), qubit, -1, false);
      }
      acc.add(term, 1.0);
    }
    s = acc;
  }

 private:
  int n_;
  int bits_;
  bool density_;
};

struct TapeEntry {
  Buf s_before;
  Buf t_before;
  RotationMats mats;
  AngleEval angle;
};

struct ForwardResult {
  Jet jet;
  Buf s, t;
  std::vector<TapeEntry> tape;  // one per rotation, in op order
};

bool uses_density(const Circuit& circuit, const EvalOptions& options) {
  return options.channel != nullptr || options.force_density || circuit.initial_density.has_value();
}

void validate(const Circuit& circuit, std::span<const double> theta, const EvalOptions& options) {
  if (static_cast<int>(theta.size()) != circuit.n_params) {
    throw InvalidInput("parameter vector has " + std::to_string(theta.size()) + " entries, circuit expects " +
                       std::to_string(circuit.n_params));
  }
  if (!options.angle_offsets.empty() && static_cast<int>(options.angle_offsets.size()) != circuit.n_params) {
    throw InvalidInput("angle offset vector length does not match the circuit");
  }
  if (circuit.amplitude_bra && uses_density(circuit, options)) {
    throw ModeError("amplitude readout requires pure-state evolution");
  }
  const std::size_t bits = static_cast<std::size_t>(uses_density(circuit, options) ? 2 : 1) *
                           static_cast<std::size_t>(circuit.n_qubits);
  if ((std::size_t{1} << bits) > kCapacity) throw InvalidInput("circuit too wide for the simulator");
}

Buf initial_buffer(const Circuit& circuit, bool density) {
  const std::size_t d = std::size_t{1} << circuit.n_qubits;
  if (!density) {
    Buf psi(d);
    for (std::size_t i = 0; i < d; ++i) psi[i] = circuit.initial_state(static_cast<Eigen::Index>(i));
    return psi;
  }
  Buf rho(d * d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) {
      const auto ri = static_cast<Eigen::Index>(r), ci = static_cast<Eigen::Index>(c);
      rho[r * d + c] = circuit.initial_density ? (*circuit.initial_density)(ri, ci)
                                               : circuit.initial_state(ri) * std::conj(circuit.initial_state(ci));
    }
  return rho;
}

std::vector<Mat2> kraus_mats(const EvalOptions& options) {
  std::vector<Mat2> out;
  if (options.channel == nullptr) return out;
  for (const auto& e : *options.channel) {
    if (e.rows() != 2 || e.cols() != 2) throw InvalidInput("channel Kraus operators must be single-qubit");
    out.push_back({e(0, 0), e(0, 1), e(1, 0), e(1, 1)});
  }
  return out;
}

Buf apply_observable(const ComplexMatrix& o, const Buf& v) {
  const auto d = static_cast<std::size_t>(o.rows());
  Buf out(d);
  for (std::size_t r = 0; r < d; ++r) {
    Complex s = 0.0;
    for (std::size_t c = 0; c < d; ++c) s += o(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * v[c];
    out[r] = s;
  }
  return out;
}

Buf bra_buffer(const Circuit& circuit) {
  const auto d = static_cast<std::size_t>(circuit.amplitude_bra->size());
  Buf b(d);
  for (std::size_t i = 0; i < d; ++i) b[i] = (*circuit.amplitude_bra)(static_cast<Eigen::Index>(i));
  return b;
}

Jet readout(const Circuit& circuit, bool density, const Buf& s, const Buf& t) {
  const std::size_t d = std::size_t{1} << circuit.n_qubits;
  if (circuit.amplitude_bra) {
    const Buf bra = bra_buffer(circuit);
    return {real_dot(bra, s), real_dot(bra, t)};
  }
  const ComplexMatrix& o = circuit.observable;
  if (!density) {
    const Buf os = apply_observable(o, s);
    return {real_dot(s, os), 2.0 * real_dot(t, os)};
  }
  double value = 0.0, slope = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const Complex oij = o(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (oij == 0.0) continue;
      value += (oij * s[j * d + i]).real();
      slope += (oij * t[j * d + i]).real();
    }
  return {value, slope};
}

/// Seeds for the reverse sweep of u_value * Q + u_slope * dQ/dx.
std::pair<Buf, Buf> readout_adjoint(const Circuit& circuit, bool density, const Buf& s, const Buf& t, double u_value,
                                    double u_slope) {
  const std::size_t d = std::size_t{1} << circuit.n_qubits;
  if (circuit.amplitude_bra) {
    const Buf bra = bra_buffer(circuit);
    Buf sb(d), tb(d);
    for (std::size_t i = 0; i < d; ++i) {
      sb[i] = u_value * bra[i];
      tb[i] = u_slope * bra[i];
    }
    return {sb, tb};
  }
  const ComplexMatrix& o = circuit.observable;
  if (!density) {
    const Buf os = apply_observable(o, s);
    const Buf ot = apply_observable(o, t);
    Buf sb(d), tb(d);
    for (std::size_t i = 0; i < d; ++i) {
      sb[i] = 2.0 * u_value * os[i] + 2.0 * u_slope * ot[i];
      tb[i] = 2.0 * u_slope * os[i];
    }
    return {sb, tb};
  }
  Buf sb(d * d), tb(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const Complex oij = o(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      sb[i * d + j] = u_value * oij;
      tb[i * d + j] = u_slope * oij;
    }
  return {sb, tb};
}

ForwardResult run_forward(const Circuit& circuit, std::span<const double> theta, double x,
                          const EvalOptions& options, bool record) {
  validate(circuit, theta, options);
  const bool density = uses_density(circuit, options);
  const Evolution evo(circuit.n_qubits, density);
  const auto kraus = kraus_mats(options);

  ForwardResult out;
  out.s = initial_buffer(circuit, density);
  out.t = Buf(out.s.size());
  if (record) out.tape.reserve(circuit.ops.size());

  for (const auto& op : circuit.ops) {
    if (const auto* rot = std::get_if<Rotation>(&op)) {
      const AngleEval a = angle_of(*rot, theta, x, options.angle_offsets);
      if (!std::isfinite(a.angle) || !std::isfinite(a.dx)) throw NumericalError("non-finite gate angle");
      const RotationMats m = rotation_mats(rot->axis, a.angle);
      if (record) out.tape.push_back({out.s, out.t, m, a});
      if (a.dx != 0.0) {
        const Buf source = evo.derivative(out.s, m, rot->target, rot->control);
        evo.forward(out.t, m, rot->target, rot->control);
        out.t.add(source, a.dx);
      } else {
        evo.forward(out.t, m, rot->target, rot->control);
      }
      evo.forward(out.s, m, rot->target, rot->control);
    } else {
      const auto& fixed = std::get<FixedGate>(op);
      evo.fixed(out.s, fixed.matrix, fixed.targets, false);
      evo.fixed(out.t, fixed.matrix, fixed.targets, false);
    }
    if (!kraus.empty()) {
      for (int q : touched_qubits(op)) {
        evo.channel(out.s, kraus, q, false);
        evo.channel(out.t, kraus, q, false);
      }
    }
  }
  out.jet = readout(circuit, density, out.s, out.t);
  return out;
}

std::vector<double> run_backward(const Circuit& circuit, std::span<const double> theta, double x,
                                 const EvalOptions& options, const ForwardResult& fwd, double u_value,
                                 double u_slope) {
  const bool density = uses_density(circuit, options);
  const Evolution evo(circuit.n_qubits, density);
  const auto kraus = kraus_mats(options);
  auto [sb, tb] = readout_adjoint(circuit, density, fwd.s, fwd.t, u_value, u_slope);
  std::vector<double> grad(static_cast<std::size_t>(circuit.n_params), 0.0);

  std::size_t tape_index = fwd.tape.size();
  for (auto it = circuit.ops.rbegin(); it != circuit.ops.rend(); ++it) {
    const Operation& op = *it;
    if (!kraus.empty()) {
      const auto qs = touched_qubits(op);
      for (auto q = qs.rbegin(); q != qs.rend(); ++q) {
        evo.channel(sb, kraus, *q, true);
        evo.channel(tb, kraus, *q, true);
      }
    }
    if (const auto* rot = std::get_if<Rotation>(&op)) {
      const TapeEntry& rec = fwd.tape[--tape_index];
      const int t = rot->target, c = rot->control;
      if (rot->rule != AngleRule::Signal) {
        const auto p = static_cast<std::size_t>(rot->param);
        const Buf ds = evo.derivative(rec.s_before, rec.mats, t, c);
        const Buf dt = evo.derivative(rec.t_before, rec.mats, t, c);
        const double direct = real_dot(sb, ds) + real_dot(tb, dt);
        if (rot->rule == AngleRule::Parameter) {
          grad[p] += direct;
        } else {
          // angle = theta x, tangent coefficient = theta
          const Buf dds = evo.second_derivative(rec.s_before, rec.mats, t, c);
          grad[p] += x * direct + real_dot(tb, ds) + theta[p] * x * real_dot(tb, dds);
        }
      }
      if (rec.angle.dx != 0.0) {
        const Buf carry = evo.derivative_adjoint(tb, rec.mats, t, c);
        evo.adjoint(sb, rec.mats, t, c);
        sb.add(carry, rec.angle.dx);
      } else {
        evo.adjoint(sb, rec.mats, t, c);
      }
      evo.adjoint(tb, rec.mats, t, c);
    } else {
      const auto& fixed = std::get<FixedGate>(op);
      evo.fixed(sb, fixed.matrix, fixed.targets, true);
      evo.fixed(tb, fixed.matrix, fixed.targets, true);
    }
  }
  return grad;
}

}  // namespace

std::vector<int> touched_qubits(const Operation& op) {
  if (const auto* rot = std::get_if<Rotation>(&op)) {
    if (rot->control >= 0) return {rot->control, rot->target};
    return {rot->target};
  }
  return std::get<FixedGate>(op).targets;
}

Jet evaluate(const Circuit& circuit, std::span<const double> theta, double x, const EvalOptions& options) {
  return run_forward(circuit, theta, x, options, false).jet;
}

JetGradient differentiate(const Circuit& circuit, std::span<const double> theta, double x,
                          const EvalOptions& options, bool value_gradient, bool slope_gradient) {
  const ForwardResult fwd = run_forward(circuit, theta, x, options, value_gradient || slope_gradient);
  JetGradient out;
  out.jet = fwd.jet;
  if (value_gradient) out.d_value = run_backward(circuit, theta, x, options, fwd, 1.0, 0.0);
  if (slope_gradient) out.d_slope = run_backward(circuit, theta, x, options, fwd, 0.0, 1.0);
  return out;
}

}  // namespace vqint::sim
