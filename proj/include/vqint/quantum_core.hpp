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

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace vqint {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

enum class GateKind { RX, RY, RZ, H, CZ };

/// Standard gate matrices. Rotations follow R_s(angle) = exp(-i angle s / 2);
/// `angle` is required for rotations and ignored otherwise.
ComplexMatrix gate_matrix(GateKind kind, std::optional<double> angle = std::nullopt);

/// |0><0| (x) I + |1><1| (x) u, control on the most significant qubit.
ComplexMatrix controlled(const ComplexMatrix& u);

ComplexMatrix pauli(char label);

/// Tensor product of single-qubit Paulis, e.g. "ZZ" or "XII". Qubit 0 is the
/// leftmost factor.
ComplexMatrix pauli_string(std::string_view labels);

class QuantumState {
 public:
  enum class Mode { Statevector, Density };

  /// |0...0> in the requested representation.
  static QuantumState zero(int n_qubits, Mode mode);
  static QuantumState from_statevector(ComplexVector psi);
  static QuantumState from_density(ComplexMatrix rho);

  Mode mode() const noexcept { return mode_; }
  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t dimension() const noexcept { return std::size_t{1} << n_qubits_; }

  /// Only valid in statevector mode.
  const ComplexVector& amplitudes() const;
  /// Only valid in density mode.
  const ComplexMatrix& density() const;

  /// |psi><psi| for statevectors, identity for density states.
  QuantumState to_density() const;

 private:
  QuantumState(Mode mode, int n_qubits, ComplexVector psi, ComplexMatrix rho);

  Mode mode_;
  int n_qubits_;
  ComplexVector psi_;
  ComplexMatrix rho_;
};

class Observable {
 public:
  /// Throws InvalidInput unless `matrix` is square, power-of-two sized and
  /// Hermitian within 1e-12.
  explicit Observable(ComplexMatrix matrix);
  const ComplexMatrix& matrix() const noexcept { return matrix_; }

 private:
  ComplexMatrix matrix_;
};

/// psi <- G psi or rho <- G rho G^dagger, with G acting on `targets`
/// (targets[0] is the most significant qubit of the gate's own index).
QuantumState apply_gate(const QuantumState& state, const ComplexMatrix& gate,
                        std::span<const int> targets);

/// rho <- sum_i E_i rho E_i^dagger. Requires a density state and a complete
/// Kraus set (sum E^dagger E = I within 1e-10).
QuantumState apply_kraus(const QuantumState& state, std::span<const ComplexMatrix> ops,
                         std::span<const int> targets);

/// <psi|O|psi> or Tr(rho O).
double expectation(const QuantumState& state, const Observable& obs);

/// Throws ChannelDefinitionError when sum E^dagger E deviates from I by more
/// than `tol` in any entry.
void check_completeness(std::span<const ComplexMatrix> ops, double tol = 1e-10);

namespace kernels {

/// Dense 2^k x 2^k matrix for k <= 3, row-major, no heap storage.
struct SmallMatrix {
  int dim = 0;
  std::array<Complex, 64> a{};

  Complex& operator()(int r, int c) noexcept { return a[static_cast<std::size_t>(r * dim + c)]; }
  Complex operator()(int r, int c) const noexcept { return a[static_cast<std::size_t>(r * dim + c)]; }

  static SmallMatrix from(const ComplexMatrix& m);
  static SmallMatrix identity(int dim);
  SmallMatrix adjoint() const;
  SmallMatrix transpose() const;
  SmallMatrix conjugate() const;
  SmallMatrix operator*(const SmallMatrix& rhs) const;
  SmallMatrix operator*(Complex s) const;
  SmallMatrix operator+(const SmallMatrix& rhs) const;
};

/// In-place application of `m` to a register of `n_bits` qubits stored as a
/// flat amplitude array (qubit 0 is the most significant bit).
void apply(std::span<Complex> data, int n_bits, const SmallMatrix& m, std::span<const int> targets);

/// Vectorised density matrix rho (row-major, n qubits -> 2n bits):
/// rho <- left * rho * right, with both acting on `targets`.
void sandwich(std::span<Complex> rho, int n_qubits, const SmallMatrix& left,
              const SmallMatrix& right, std::span<const int> targets);

/// Re sum conj(a_i) b_i.
double real_inner(std::span<const Complex> a, std::span<const Complex> b) noexcept;

}  // namespace kernels

}  // namespace vqint
