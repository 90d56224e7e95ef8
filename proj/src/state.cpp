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

#include "hqnn/state.hpp"

#include <bit>
#include <cmath>
#include <string>
#include <utility>

namespace hqnn {

namespace {

constexpr cplx kI{0.0, 1.0};

void check_qubits(int n_qubits) {
    if (n_qubits < 1 || n_qubits > 30) {
        throw DimensionError("qubit count must be in [1, 30], got " + std::to_string(n_qubits));
    }
}

void check_wire(int wire, int n_qubits) {
    if (wire < 0 || wire >= n_qubits) {
        throw DimensionError("wire " + std::to_string(wire) + " out of range for " +
                             std::to_string(n_qubits) + " qubits");
    }
}

Mat2 conj(const Mat2 &m) { return {std::conj(m[0]), std::conj(m[1]), std::conj(m[2]), std::conj(m[3])}; }

} // namespace

int Gate::param_count() const {
    switch (kind) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
        return 1;
    case GateKind::ROT:
        return 3;
    default:
        return 0;
    }
}

void Gate::validate(int n_qubits) const {
    check_wire(wires[0], n_qubits);
    if (kind == GateKind::CNOT) {
        check_wire(wires[1], n_qubits);
        if (wires[0] == wires[1]) {
            throw DimensionError("CNOT control and target must differ");
        }
    }
    for (int i = 0; i < param_count(); ++i) {
        if (!std::isfinite(params[i])) {
            throw NumericalError("gate angle is not finite");
        }
    }
}

Mat2 single_qubit_matrix(const Gate &gate) {
    const double t = gate.params[0];
    const double c = std::cos(t / 2);
    const double s = std::sin(t / 2);
    switch (gate.kind) {
    case GateKind::RX:
        return {c, -kI * s, -kI * s, c};
    case GateKind::RY:
        return {c, -s, s, c};
    case GateKind::RZ:
        return {std::exp(-kI * (t / 2)), 0.0, 0.0, std::exp(kI * (t / 2))};
    case GateKind::PAULI_X:
        return {0.0, 1.0, 1.0, 0.0};
    case GateKind::ROT: {
        const auto [a, b, g] = gate.params;
        const double cb = std::cos(b / 2);
        const double sb = std::sin(b / 2);
        return {std::exp(-kI * ((a + g) / 2)) * cb, -std::exp(kI * ((a - g) / 2)) * sb,
                std::exp(-kI * ((a - g) / 2)) * sb, std::exp(kI * ((a + g) / 2)) * cb};
    }
    case GateKind::CNOT:
        break;
    }
    throw std::invalid_argument("single_qubit_matrix: CNOT is a two-qubit gate");
}

std::vector<cplx> gate_matrix(const Gate &gate) {
    if (gate.kind == GateKind::CNOT) {
        std::vector<cplx> m(16, 0.0);
        m[0 * 4 + 0] = 1.0;
        m[1 * 4 + 1] = 1.0;
        m[2 * 4 + 3] = 1.0;
        m[3 * 4 + 2] = 1.0;
        return m;
    }
    const Mat2 m = single_qubit_matrix(gate);
    return {m.begin(), m.end()};
}

std::array<Gate, 3> rot_decompose(double alpha, double beta, double gamma, int wire) {
    return {Gate::rz(wire, alpha), Gate::ry(wire, beta), Gate::rz(wire, gamma)};
}

Observable::Observable(std::vector<bool> beta) : beta_(std::move(beta)) {
    if (beta_.empty() || beta_.size() > 63) {
        throw DimensionError("observable length must be in [1, 63]");
    }
    const int n = n_qubits();
    for (int w = 0; w < n; ++w) {
        if (beta_[w]) {
            mask_ |= std::uint64_t{1} << (n - 1 - w);
        }
    }
    if (mask_ == 0) {
        throw std::invalid_argument("observable must act with Z on at least one wire");
    }
}

Observable Observable::z(int n_qubits, int wire) {
    check_wire(wire, n_qubits);
    std::vector<bool> beta(n_qubits, false);
    beta[wire] = true;
    return Observable(std::move(beta));
}

Observable Observable::all_z(int n_qubits) { return Observable(std::vector<bool>(n_qubits, true)); }

std::vector<Observable> single_z_observables(int n_qubits) {
    std::vector<Observable> out;
    out.reserve(n_qubits);
    for (int w = 0; w < n_qubits; ++w) {
        out.push_back(Observable::z(n_qubits, w));
    }
    return out;
}

// ---------------------------------------------------------------------------
// kernels

namespace kernels {

void apply_1q(std::span<cplx> amps, int n_bits, int bit, const Mat2 &m) {
    const std::size_t stride = std::size_t{1} << (n_bits - 1 - bit);
    const std::size_t size = amps.size();
    for (std::size_t base = 0; base < size; base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            const cplx a = amps[i];
            const cplx b = amps[i + stride];
            amps[i] = m[0] * a + m[1] * b;
            amps[i + stride] = m[2] * a + m[3] * b;
        }
    }
}

void apply_x(std::span<cplx> amps, int n_bits, int bit) {
    const std::size_t stride = std::size_t{1} << (n_bits - 1 - bit);
    const std::size_t size = amps.size();
    for (std::size_t base = 0; base < size; base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            std::swap(amps[i], amps[i + stride]);
        }
    }
}

void apply_cnot(std::span<cplx> amps, int n_bits, int control, int target) {
    const std::size_t cmask = std::size_t{1} << (n_bits - 1 - control);
    const std::size_t tmask = std::size_t{1} << (n_bits - 1 - target);
    const std::size_t size = amps.size();
    for (std::size_t i = 0; i < size; ++i) {
        if ((i & cmask) && !(i & tmask)) {
            std::swap(amps[i], amps[i | tmask]);
        }
    }
}

} // namespace kernels

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
    check_qubits(n_qubits);
    amps_.assign(std::size_t{1} << n_qubits, 0.0);
    amps_[0] = 1.0;
}

StateVector StateVector::from_amplitudes(std::vector<cplx> amplitudes) {
    const std::size_t len = amplitudes.size();
    if (len < 2 || !std::has_single_bit(len)) {
        throw DimensionError("amplitude count must be a power of two >= 2");
    }
    double norm = 0.0;
    for (const auto &a : amplitudes) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw NumericalError("non-finite amplitude");
        }
        norm += std::norm(a);
    }
    if (std::abs(norm - 1.0) > 1e-9) {
        throw NumericalError("amplitudes are not normalized (norm^2 = " + std::to_string(norm) + ")");
    }
    return {std::countr_zero(len), std::move(amplitudes)};
}

StateVector StateVector::basis(int n_qubits, std::size_t index) {
    StateVector s(n_qubits);
    if (index >= s.dim()) {
        throw DimensionError("basis index out of range");
    }
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
}

double StateVector::norm_squared() const {
    double acc = 0.0;
    for (const auto &a : amps_) {
        acc += std::norm(a);
    }
    return acc;
}

StateVector &StateVector::apply(const Gate &gate) {
    gate.validate(n_qubits_);
    switch (gate.kind) {
    case GateKind::CNOT:
        kernels::apply_cnot(amps_, n_qubits_, gate.wires[0], gate.wires[1]);
        break;
    case GateKind::PAULI_X:
        kernels::apply_x(amps_, n_qubits_, gate.wires[0]);
        break;
    default:
        kernels::apply_1q(amps_, n_qubits_, gate.wires[0], single_qubit_matrix(gate));
    }
    return *this;
}

StateVector apply_gate(StateVector state, const Gate &gate) {
    state.apply(gate);
    return state;
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(int n_qubits) : n_qubits_(n_qubits) {
    check_qubits(n_qubits);
    if (n_qubits > 12) {
        throw DimensionError("density matrices are limited to 12 qubits");
    }
    m_.assign(dim() * dim(), 0.0);
    m_[0] = 1.0;
}

DensityMatrix::DensityMatrix(const StateVector &pure) : DensityMatrix(pure.n_qubits()) {
    const std::size_t d = dim();
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            m_[r * d + c] = pure[r] * std::conj(pure[c]);
        }
    }
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
    DensityMatrix rho(n_qubits);
    const std::size_t d = rho.dim();
    rho.m_[0] = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        rho.m_[i * d + i] = 1.0 / static_cast<double>(d);
    }
    return rho;
}

DensityMatrix DensityMatrix::from_entries(int n_qubits, std::vector<cplx> entries) {
    DensityMatrix rho(n_qubits);
    if (entries.size() != rho.m_.size()) {
        throw DimensionError("density matrix entry count does not match 4^n");
    }
    rho.m_ = std::move(entries);
    return rho;
}

cplx DensityMatrix::trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < dim(); ++i) {
        t += (*this)(i, i);
    }
    return t;
}

double DensityMatrix::purity() const {
    // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
    double acc = 0.0;
    for (const auto &v : m_) {
        acc += std::norm(v);
    }
    return acc;
}

double DensityMatrix::hermiticity_error() const {
    double worst = 0.0;
    const std::size_t d = dim();
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = r; c < d; ++c) {
            worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
        }
    }
    return worst;
}

DensityMatrix &DensityMatrix::apply(const Gate &gate) {
    gate.validate(n_qubits_);
    const int bits = 2 * n_qubits_;
    const int n = n_qubits_;
    switch (gate.kind) {
    case GateKind::CNOT:
        kernels::apply_cnot(m_, bits, gate.wires[0], gate.wires[1]);
        kernels::apply_cnot(m_, bits, n + gate.wires[0], n + gate.wires[1]);
        break;
    case GateKind::PAULI_X:
        kernels::apply_x(m_, bits, gate.wires[0]);
        kernels::apply_x(m_, bits, n + gate.wires[0]);
        break;
    default:
        conjugate_by(gate.wires[0], single_qubit_matrix(gate));
    }
    return *this;
}

DensityMatrix &DensityMatrix::conjugate_by(int wire, const Mat2 &m) {
    check_wire(wire, n_qubits_);
    kernels::apply_1q(m_, 2 * n_qubits_, wire, m);
    kernels::apply_1q(m_, 2 * n_qubits_, n_qubits_ + wire, conj(m));
    return *this;
}

DensityMatrix &DensityMatrix::operator+=(const DensityMatrix &other) {
    if (other.n_qubits_ != n_qubits_) {
        throw DimensionError("density matrix size mismatch");
    }
    for (std::size_t i = 0; i < m_.size(); ++i) {
        m_[i] += other.m_[i];
    }
    return *this;
}

DensityMatrix &DensityMatrix::operator*=(double s) {
    for (auto &v : m_) {
        v *= s;
    }
    return *this;
}

DensityMatrix apply_gate(DensityMatrix rho, const Gate &gate) {
    rho.apply(gate);
    return rho;
}

// ---------------------------------------------------------------------------
// measurements

namespace {

double parity_sign(std::uint64_t index, std::uint64_t mask) {
    return (std::popcount(index & mask) & 1) ? -1.0 : 1.0;
}

} // namespace

double expectation_z(const StateVector &state, const Observable &obs) {
    if (obs.n_qubits() != state.n_qubits()) {
        throw DimensionError("observable length does not match qubit count");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < state.dim(); ++i) {
        acc += parity_sign(i, obs.mask()) * std::norm(state[i]);
    }
    return acc;
}

double expectation_z(const DensityMatrix &rho, const Observable &obs) {
    if (obs.n_qubits() != rho.n_qubits()) {
        throw DimensionError("observable length does not match qubit count");
    }
    // O_beta is diagonal, so Tr(O rho) only touches the diagonal of rho.
    double acc = 0.0;
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        acc += parity_sign(i, obs.mask()) * rho(i, i).real();
    }
    return acc;
}

double fidelity(const StateVector &a, const StateVector &b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw DimensionError("fidelity: qubit counts differ");
    }
    cplx overlap = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        overlap += std::conj(a[i]) * b[i];
    }
    return std::min(1.0, std::norm(overlap));
}

DensityMatrix partial_trace(const StateVector &state, int keep_wire) {
    check_wire(keep_wire, state.n_qubits());
    const std::size_t stride = std::size_t{1} << (state.n_qubits() - 1 - keep_wire);
    std::vector<cplx> r(4, 0.0);
    for (std::size_t i = 0; i < state.dim(); ++i) {
        if (i & stride) {
            continue;
        }
        const cplx a0 = state[i];
        const cplx a1 = state[i | stride];
        r[0] += a0 * std::conj(a0);
        r[1] += a0 * std::conj(a1);
        r[2] += a1 * std::conj(a0);
        r[3] += a1 * std::conj(a1);
    }
    return DensityMatrix::from_entries(1, std::move(r));
}

DensityMatrix partial_trace(const DensityMatrix &rho, int keep_wire) {
    check_wire(keep_wire, rho.n_qubits());
    const std::size_t stride = std::size_t{1} << (rho.n_qubits() - 1 - keep_wire);
    std::vector<cplx> r(4, 0.0);
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        if (i & stride) {
            continue;
        }
        const std::size_t j = i | stride;
        r[0] += rho(i, i);
        r[1] += rho(i, j);
        r[2] += rho(j, i);
        r[3] += rho(j, j);
    }
    return DensityMatrix::from_entries(1, std::move(r));
}

} // namespace hqnn
