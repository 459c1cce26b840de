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

#include "vqint/quantum_core.hpp"

#include <cmath>
#include <string>

#include "vqint/errors.hpp"

namespace vqint {

namespace {

constexpr Complex kI{0.0, 1.0};

bool is_power_of_two(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

int log2_exact(Eigen::Index n) {
  int k = 0;
  while ((Eigen::Index{1} << k) < n) ++k;
  return k;
}

void check_targets(std::span<const int> targets, int n_qubits) {
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] < 0 || targets[i] >= n_qubits) {
      throw InvalidInput("target qubit " + std::to_string(targets[i]) + " out of range for " +
                         std::to_string(n_qubits) + " qubits");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (targets[i] == targets[j]) throw InvalidInput("duplicate target qubit");
    }
  }
}

void check_gate_shape(const ComplexMatrix& gate, std::span<const int> targets) {
  const Eigen::Index expected = Eigen::Index{1} << targets.size();
  if (gate.rows() != expected || gate.cols() != expected) {
    throw InvalidInput("gate of size " + std::to_string(gate.rows()) + "x" +
                       std::to_string(gate.cols()) + " does not match " +
                       std::to_string(targets.size()) + " target(s)");
  }
  if (targets.size() > 3) throw InvalidInput("gates on more than 3 qubits are not supported");
}

}  // namespace

ComplexMatrix gate_matrix(GateKind kind, std::optional<double> angle) {
  const bool rotation = kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ;
  if (rotation) {
    if (!angle) throw InvalidInput("rotation gate requires an angle");
    if (!std::isfinite(*angle)) throw InvalidInput("rotation angle must be finite");
  }
  ComplexMatrix m;
  switch (kind) {
    case GateKind::RX: {
      const double c = std::cos(*angle / 2), s = std::sin(*angle / 2);
      m.resize(2, 2);
      m << c, -kI * s, -kI * s, c;
      break;
    }
    case GateKind::RY: {
      const double c = std::cos(*angle / 2), s = std::sin(*angle / 2);
      m.resize(2, 2);
      m << c, -s, s, c;
      break;
    }
    case GateKind::RZ: {
      const Complex e = std::polar(1.0, -*angle / 2);
      m.resize(2, 2);
      m << e, 0.0, 0.0, std::conj(e);
      break;
    }
    case GateKind::H: {
      const double r = 1.0 / std::sqrt(2.0);
      m.resize(2, 2);
      m << r, r, r, -r;
      break;
    }
    case GateKind::CZ:
      m = ComplexMatrix::Identity(4, 4);
      m(3, 3) = -1.0;
      break;
  }
  return m;
}

ComplexMatrix controlled(const ComplexMatrix& u) {
  if (u.rows() != u.cols() || !is_power_of_two(u.rows())) {
    throw InvalidInput("controlled() needs a square power-of-two matrix");
  }
  const Eigen::Index d = u.rows();
  ComplexMatrix m = ComplexMatrix::Zero(2 * d, 2 * d);
  m.topLeftCorner(d, d).setIdentity();
  m.bottomRightCorner(d, d) = u;
  return m;
}

ComplexMatrix pauli(char label) {
  ComplexMatrix m(2, 2);
  switch (label) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -kI, kI, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw InvalidInput(std::string("unknown Pauli label '") + label + "'");
  }
  return m;
}

ComplexMatrix pauli_string(std::string_view labels) {
  if (labels.empty()) throw InvalidInput("empty Pauli string");
  ComplexMatrix out = pauli(labels.front());
  for (std::size_t i = 1; i < labels.size(); ++i) {
    const ComplexMatrix p = pauli(labels[i]);
    ComplexMatrix next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index r = 0; r < out.rows(); ++r)
      for (Eigen::Index c = 0; c < out.cols(); ++c) next.block(2 * r, 2 * c, 2, 2) = out(r, c) * p;
    out = std::move(next);
  }
  return out;
}

// ---------------------------------------------------------------------------
// QuantumState

QuantumState::QuantumState(Mode mode, int n_qubits, ComplexVector psi, ComplexMatrix rho)
    : mode_(mode), n_qubits_(n_qubits), psi_(std::move(psi)), rho_(std::move(rho)) {}

QuantumState QuantumState::zero(int n_qubits, Mode mode) {
  if (n_qubits < 1 || n_qubits > 4) throw InvalidInput("register size must be 1..4 qubits");
  const Eigen::Index d = Eigen::Index{1} << n_qubits;
  if (mode == Mode::Statevector) {
    ComplexVector psi = ComplexVector::Zero(d);
    psi(0) = 1.0;
    return {mode, n_qubits, std::move(psi), {}};
  }
  ComplexMatrix rho = ComplexMatrix::Zero(d, d);
  rho(0, 0) = 1.0;
  return {mode, n_qubits, {}, std::move(rho)};
}

QuantumState QuantumState::from_statevector(ComplexVector psi) {
  if (!is_power_of_two(psi.size()) || psi.size() > 16) {
    throw InvalidInput("statevector length must be 2^n with n <= 4");
  }
  if (std::abs(psi.squaredNorm() - 1.0) > 1e-10) throw InvalidInput("statevector is not normalised");
  const int n = log2_exact(psi.size());
  return {Mode::Statevector, n, std::move(psi), {}};
}

QuantumState QuantumState::from_density(ComplexMatrix rho) {
  if (rho.rows() != rho.cols() || !is_power_of_two(rho.rows()) || rho.rows() > 16) {
    throw InvalidInput("density matrix must be 2^n x 2^n with n <= 4");
  }
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw InvalidInput("density matrix is not Hermitian");
  }
  if (std::abs(rho.trace() - Complex{1.0}) > 1e-10) throw InvalidInput("density matrix trace != 1");
  const int n = log2_exact(rho.rows());
  return {Mode::Density, n, {}, std::move(rho)};
}

const ComplexVector& QuantumState::amplitudes() const {
  if (mode_ != Mode::Statevector) throw ModeError("state is a density matrix");
  return psi_;
}

const ComplexMatrix& QuantumState::density() const {
  if (mode_ != Mode::Density) throw ModeError("state is a statevector");
  return rho_;
}

QuantumState QuantumState::to_density() const {
  if (mode_ == Mode::Density) return *this;
  return {Mode::Density, n_qubits_, {}, psi_ * psi_.adjoint()};
}

Observable::Observable(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || !is_power_of_two(matrix_.rows())) {
    throw InvalidInput("observable must be square with power-of-two dimension");
  }
  if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw InvalidInput("observable is not Hermitian");
  }
}

// ---------------------------------------------------------------------------
// Evolution

QuantumState apply_gate(const QuantumState& state, const ComplexMatrix& gate,
                        std::span<const int> targets) {
  check_gate_shape(gate, targets);
  check_targets(targets, state.n_qubits());
  const auto m = kernels::SmallMatrix::from(gate);
  if (state.mode() == QuantumState::Mode::Statevector) {
    ComplexVector psi = state.amplitudes();
    kernels::apply({psi.data(), static_cast<std::size_t>(psi.size())}, state.n_qubits(), m, targets);
    return QuantumState::from_statevector(std::move(psi));
  }
  using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  RowMajor rho = state.density();
  kernels::sandwich({rho.data(), static_cast<std::size_t>(rho.size())}, state.n_qubits(), m,
                    m.adjoint(), targets);
  ComplexMatrix out = rho;
  // Re-symmetrise away rounding so the Hermiticity invariant holds at 1e-12.
  out = (0.5 * (out + out.adjoint())).eval();
  return QuantumState::from_density(std::move(out));
}

void check_completeness(std::span<const ComplexMatrix> ops, double tol) {
  if (ops.empty()) throw ChannelDefinitionError("empty Kraus set");
  const Eigen::Index d = ops.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& e : ops) {
    if (e.rows() != d || e.cols() != d) throw ChannelDefinitionError("Kraus operators differ in size");
    sum += e.adjoint() * e;
  }
  const double dev = (sum - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (dev > tol) {
    throw ChannelDefinitionError("Kraus completeness violated by " + std::to_string(dev));
  }
}

QuantumState apply_kraus(const QuantumState& state, std::span<const ComplexMatrix> ops,
                         std::span<const int> targets) {
  if (state.mode() != QuantumState::Mode::Density) {
    throw ModeError("Kraus channels need a density-matrix state");
  }
  check_completeness(ops);
  check_gate_shape(ops.front(), targets);
  check_targets(targets, state.n_qubits());

  using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const RowMajor rho = state.density();
  RowMajor acc = RowMajor::Zero(rho.rows(), rho.cols());
  for (const auto& e : ops) {
    RowMajor term = rho;
    const auto k = kernels::SmallMatrix::from(e);
    kernels::sandwich({term.data(), static_cast<std::size_t>(term.size())}, state.n_qubits(), k,
                      k.adjoint(), targets);
    acc += term;
  }
  ComplexMatrix out = acc;
  out = (0.5 * (out + out.adjoint())).eval();
  return QuantumState::from_density(std::move(out));
}

double expectation(const QuantumState& state, const Observable& obs) {
  if (obs.matrix().rows() != static_cast<Eigen::Index>(state.dimension())) {
    throw InvalidInput("observable dimension does not match the state");
  }
  Complex value;
  if (state.mode() == QuantumState::Mode::Statevector) {
    const auto& psi = state.amplitudes();
    value = psi.dot(obs.matrix() * psi);  // dot() conjugates the left operand
  } else {
    value = (state.density() * obs.matrix()).trace();
  }
  if (std::abs(value.imag()) > 1e-8) {
    throw NumericalError("expectation has imaginary part " + std::to_string(value.imag()));
  }
  return value.real();
}

// ---------------------------------------------------------------------------
// Kernels

namespace kernels {

SmallMatrix SmallMatrix::from(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() > 8) throw InvalidInput("SmallMatrix holds at most 8x8");
  SmallMatrix out;
  out.dim = static_cast<int>(m.rows());
  for (int r = 0; r < out.dim; ++r)
    for (int c = 0; c < out.dim; ++c) out(r, c) = m(r, c);
  return out;
}

SmallMatrix SmallMatrix::identity(int dim) {
  SmallMatrix out;
  out.dim = dim;
  for (int i = 0; i < dim; ++i) out(i, i) = 1.0;
  return out;
}

SmallMatrix SmallMatrix::adjoint() const {
  SmallMatrix out;
  out.dim = dim;
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) out(r, c) = std::conj((*this)(c, r));
  return out;
}

SmallMatrix SmallMatrix::transpose() const {
  SmallMatrix out;
  out.dim = dim;
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) out(r, c) = (*this)(c, r);
  return out;
}

SmallMatrix SmallMatrix::conjugate() const {
  SmallMatrix out;
  out.dim = dim;
  for (int i = 0; i < dim * dim; ++i) out.a[static_cast<std::size_t>(i)] = std::conj(a[static_cast<std::size_t>(i)]);
  return out;
}

SmallMatrix SmallMatrix::operator*(const SmallMatrix& rhs) const {
  SmallMatrix out;
  out.dim = dim;
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) {
      Complex s = 0.0;
      for (int k = 0; k < dim; ++k) s += (*this)(r, k) * rhs(k, c);
      out(r, c) = s;
    }
  return out;
}

SmallMatrix SmallMatrix::operator*(Complex s) const {
  SmallMatrix out = *this;
  for (int i = 0; i < dim * dim; ++i) out.a[static_cast<std::size_t>(i)] *= s;
  return out;
}

SmallMatrix SmallMatrix::operator+(const SmallMatrix& rhs) const {
  SmallMatrix out = *this;
  for (int i = 0; i < dim * dim; ++i) out.a[static_cast<std::size_t>(i)] += rhs.a[static_cast<std::size_t>(i)];
  return out;
}

void apply(std::span<Complex> data, int n_bits, const SmallMatrix& m, std::span<const int> targets) {
  const int k = static_cast<int>(targets.size());
  std::array<std::size_t, 8> offsets{};
  std::size_t mask = 0;
  for (int j = 0; j < (1 << k); ++j) {
    std::size_t off = 0;
    for (int b = 0; b < k; ++b) {
      if (j & (1 << (k - 1 - b))) off |= std::size_t{1} << (n_bits - 1 - targets[static_cast<std::size_t>(b)]);
    }
    offsets[static_cast<std::size_t>(j)] = off;
  }
  for (int b = 0; b < k; ++b) mask |= std::size_t{1} << (n_bits - 1 - targets[static_cast<std::size_t>(b)]);

  const int dim = 1 << k;
  std::array<Complex, 8> in{};
  const std::size_t total = std::size_t{1} << n_bits;
  for (std::size_t base = 0; base < total; ++base) {
    if (base & mask) continue;
    for (int j = 0; j < dim; ++j) in[static_cast<std::size_t>(j)] = data[base | offsets[static_cast<std::size_t>(j)]];
    for (int r = 0; r < dim; ++r) {
      Complex s = 0.0;
      for (int c = 0; c < dim; ++c) s += m(r, c) * in[static_cast<std::size_t>(c)];
      data[base | offsets[static_cast<std::size_t>(r)]] = s;
    }
  }
}

void sandwich(std::span<Complex> rho, int n_qubits, const SmallMatrix& left,
              const SmallMatrix& right, std::span<const int> targets) {
  std::array<int, 3> col_targets{};
  for (std::size_t i = 0; i < targets.size(); ++i) col_targets[i] = targets[i] + n_qubits;
  apply(rho, 2 * n_qubits, left, targets);
  // rho * B acts on the column index as B^T.
  apply(rho, 2 * n_qubits, right.transpose(), std::span<const int>(col_targets.data(), targets.size()));
}

double real_inner(std::span<const Complex> a, std::span<const Complex> b) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
  return s;
}

}  // namespace kernels

}  // namespace vqint
