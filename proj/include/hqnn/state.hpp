// Copyright 2026 The hqnn Authors.
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

/**
 * @file state.hpp
 * @brief Dense pure-state and density-matrix simulation.
 *
 * Bit ordering is fixed project-wide: qubit 0 is the most significant bit of
 * a basis index, so for three qubits |q0 q1 q2> lives at index 4*q0+2*q1+q2.
 * Global phase is never tracked; gate matrices follow the usual
 * R_a(theta) = exp(-i theta sigma_a / 2) convention.
 */

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace hqnn {

using cplx = std::complex<double>;

/// Row-major 2x2 complex matrix.
using Mat2 = std::array<cplx, 4>;

/// Thrown when a wire index, size or shape does not fit the target state.
class DimensionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a numerical precondition (norm, finiteness, rate range) fails.
class NumericalError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

enum class GateKind { RX, RY, RZ, ROT, PAULI_X, CNOT };

/**
 * A single gate instance. Single-qubit kinds use wires[0]; CNOT uses
 * wires[0] as control and wires[1] as target. ROT(a, b, c) is
 * RZ(c) RY(b) RZ(a), i.e. RZ(a) is applied first.
 */
struct Gate {
    GateKind kind = GateKind::PAULI_X;
    std::array<int, 2> wires{0, -1};
    std::array<double, 3> params{0.0, 0.0, 0.0};

    static Gate rx(int wire, double angle) { return {GateKind::RX, {wire, -1}, {angle, 0, 0}}; }
    static Gate ry(int wire, double angle) { return {GateKind::RY, {wire, -1}, {angle, 0, 0}}; }
    static Gate rz(int wire, double angle) { return {GateKind::RZ, {wire, -1}, {angle, 0, 0}}; }
    static Gate rot(int wire, double alpha, double beta, double gamma) {
        return {GateKind::ROT, {wire, -1}, {alpha, beta, gamma}};
    }
    static Gate x(int wire) { return {GateKind::PAULI_X, {wire, -1}, {0, 0, 0}}; }
    static Gate cnot(int control, int target) { return {GateKind::CNOT, {control, target}, {0, 0, 0}}; }

    int arity() const { return kind == GateKind::CNOT ? 2 : 1; }
    int param_count() const;

    /// Throws DimensionError on out-of-range or duplicate wires.
    void validate(int n_qubits) const;
};

/// 2x2 matrix of a single-qubit gate. Throws for CNOT.
Mat2 single_qubit_matrix(const Gate &gate);

/// Row-major matrix of the gate on its own wires: 2x2, or 4x4 for CNOT
/// with the control as the more significant local bit.
std::vector<cplx> gate_matrix(const Gate &gate);

/// RZ(alpha), RY(beta), RZ(gamma), in application order.
std::array<Gate, 3> rot_decompose(double alpha, double beta, double gamma, int wire = 0);

/// Pauli-Z product observable: Z on every wire whose bit is set.
class Observable {
  public:
    explicit Observable(std::vector<bool> beta);
    static Observable z(int n_qubits, int wire);
    static Observable all_z(int n_qubits);

    int n_qubits() const { return static_cast<int>(beta_.size()); }
    const std::vector<bool> &beta() const { return beta_; }
    /// Basis-index mask of the Z-carrying wires.
    std::uint64_t mask() const { return mask_; }

  private:
    std::vector<bool> beta_;
    std::uint64_t mask_ = 0;
};

/// One single-Z observable per wire, in wire order.
std::vector<Observable> single_z_observables(int n_qubits);

class StateVector {
  public:
    /// |0...0> on n qubits.
    explicit StateVector(int n_qubits);

    /// Takes amplitudes as given. Length must be a power of two and the
    /// norm must be 1 within 1e-9.
    static StateVector from_amplitudes(std::vector<cplx> amplitudes);
    static StateVector basis(int n_qubits, std::size_t index);

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return amps_.size(); }
    std::span<const cplx> amplitudes() const { return amps_; }
    std::span<cplx> amplitudes_mut() { return amps_; }
    const cplx &operator[](std::size_t i) const { return amps_[i]; }

    double norm_squared() const;

    /// In-place evolution; the free apply_gate() is the value-returning form.
    StateVector &apply(const Gate &gate);

  private:
    StateVector(int n_qubits, std::vector<cplx> amps) : n_qubits_(n_qubits), amps_(std::move(amps)) {}

    int n_qubits_;
    std::vector<cplx> amps_;
};

class DensityMatrix {
  public:
    /// |0...0><0...0|.
    explicit DensityMatrix(int n_qubits);
    explicit DensityMatrix(const StateVector &pure);

    static DensityMatrix maximally_mixed(int n_qubits);
    /// Row-major dim x dim entries. Only shape is checked.
    static DensityMatrix from_entries(int n_qubits, std::vector<cplx> entries);

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return std::size_t{1} << n_qubits_; }
    const cplx &operator()(std::size_t r, std::size_t c) const { return m_[r * dim() + c]; }
    std::span<const cplx> entries() const { return m_; }
    std::span<cplx> entries_mut() { return m_; }

    cplx trace() const;
    double purity() const;
    /// Largest elementwise deviation from Hermiticity.
    double hermiticity_error() const;

    /// rho -> U rho U^dagger.
    DensityMatrix &apply(const Gate &gate);
    /// rho -> M rho M^dagger for an arbitrary 2x2 operator on one wire
    /// (used for Kraus terms; not trace preserving on its own).
    DensityMatrix &conjugate_by(int wire, const Mat2 &m);

    DensityMatrix &operator+=(const DensityMatrix &other);
    DensityMatrix &operator*=(double s);

  private:
    int n_qubits_;
    std::vector<cplx> m_;
};

StateVector apply_gate(StateVector state, const Gate &gate);
DensityMatrix apply_gate(DensityMatrix rho, const Gate &gate);

double expectation_z(const StateVector &state, const Observable &obs);
double expectation_z(const DensityMatrix &rho, const Observable &obs);

/// |<a|b>|^2.
double fidelity(const StateVector &a, const StateVector &b);

/// Reduced 2x2 state of one wire.
DensityMatrix partial_trace(const StateVector &state, int keep_wire);
DensityMatrix partial_trace(const DensityMatrix &rho, int keep_wire);

namespace kernels {

// Stride kernels over an amplitude array of `n_bits` qubits in MSB order.
// The density-matrix backend reuses them by viewing rho as a 2n-bit vector
// whose first n bits index rows and last n bits index columns.

void apply_1q(std::span<cplx> amps, int n_bits, int bit, const Mat2 &m);
void apply_cnot(std::span<cplx> amps, int n_bits, int control, int target);
void apply_x(std::span<cplx> amps, int n_bits, int bit);

} // namespace kernels

} // namespace hqnn
