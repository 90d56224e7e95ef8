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
 * @file circuit.hpp
 * @brief Data re-uploading QNN: PQC blocks, circuit compilation and evaluation.
 *
 * A circuit with L layers is evaluated as L units of [S(h); P(theta_l)]
 * starting from |0...0>, where S(h) is the data block (RY(h_i) per wire for
 * angle embedding, the amplitude state-preparation reflection otherwise)
 * and P is a PQC block: ROT(a, b, c) on every wire followed by a ranged
 * CNOT layer. theta is stored flat as [layer][qubit][3].
 */

#include <array>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "json.hpp"

#include "hqnn/embedding.hpp"
#include "hqnn/state.hpp"

namespace hqnn {

/// One step of a compiled program. Parameter slots remember where their
/// angle came from so shift-rule gradients can find every occurrence.
struct ProgramOp {
    enum class Type { GATE, REFLECTION };

    Type type = Type::GATE;
    Gate gate;
    /// Flat theta index feeding gate.params[slot], or -1.
    std::array<int, 3> theta_index{-1, -1, -1};
    /// Input component feeding gate.params[0], or -1.
    int input_index = -1;
    std::shared_ptr<const Reflector> reflector;
    /// Last op of a re-uploading layer.
    bool ends_layer = false;
};

/// A parameter offset applied to one op slot during a single evaluation.
struct ParamShift {
    std::size_t op = 0;
    int slot = 0;
    double delta = 0.0;
};

class GateProgram {
  public:
    explicit GateProgram(int n_qubits) : n_qubits_(n_qubits) {}

    void add(const Gate &gate, std::array<int, 3> theta_index = {-1, -1, -1}, int input_index = -1);
    void add_reflection(std::shared_ptr<const Reflector> reflector);
    void end_layer();

    int n_qubits() const { return n_qubits_; }
    const std::vector<ProgramOp> &ops() const { return ops_; }

  private:
    int n_qubits_;
    std::vector<ProgramOp> ops_;
};

/// Gate with an optional shift applied, as the evaluator sees it.
Gate shifted_gate(const ProgramOp &op, std::size_t op_index, const ParamShift *shift);

/// Pure-state evaluation from |0...0>.
StateVector run_program(const GateProgram &program, const ParamShift *shift = nullptr);

std::vector<double> expectations(const StateVector &state, std::span<const Observable> observables);
std::vector<double> expectations(const DensityMatrix &rho, std::span<const Observable> observables);

struct PQCBlockSpec {
    int n_qubits = 1;
    /// Entangler range r, 0 < r < n. Ignored (and stored as 0) when n == 1.
    int range = 1;

    /// (control, target) pairs in application order: n / gcd(n, r) CNOTs with
    /// control (j r - r) mod n and target j r mod n for j = 1..n/gcd(n, r).
    std::vector<std::pair<int, int>> entanglers() const;
    void validate() const;
};

struct QnnOutput {
    std::vector<double> expectations;
};

class ReuploadCircuit {
  public:
    ReuploadCircuit(int n_qubits, int n_layers, Embedding embedding, std::vector<double> theta, int range = 1);

    static ReuploadCircuit zeros(int n_qubits, int n_layers, Embedding embedding = {}, int range = 1);
    /// Angles drawn uniformly from [0, 2 pi).
    static ReuploadCircuit random_uniform(int n_qubits, int n_layers, Embedding embedding, std::mt19937_64 &rng,
                                          int range = 1);

    int n_qubits() const { return n_qubits_; }
    int n_layers() const { return n_layers_; }
    int range() const { return range_; }
    const Embedding &embedding() const { return embedding_; }
    std::span<const double> theta() const { return theta_; }
    double theta(int layer, int qubit, int k) const { return theta_[flat_index(layer, qubit, k)]; }
    std::span<const double> layer_params(int layer) const;
    std::size_t quantum_param_count() const { return theta_.size(); }
    PQCBlockSpec block_spec() const { return {n_qubits_, range_}; }

    static std::size_t flat_index(int layer, int qubit, int k, int n_qubits) {
        return (static_cast<std::size_t>(layer) * n_qubits + qubit) * 3 + k;
    }
    std::size_t flat_index(int layer, int qubit, int k) const { return flat_index(layer, qubit, k, n_qubits_); }

    ReuploadCircuit with_theta(std::vector<double> theta) const;

    /// Largest input width the embedding accepts.
    std::size_t max_input_width() const { return embedding_.max_input_width(n_qubits_); }
    /// Throws DimensionError if h cannot be fed to this circuit.
    void check_input(std::span<const double> h) const;

    GateProgram compile(std::span<const double> h) const;

    nlohmann::ordered_json to_json() const;
    static ReuploadCircuit from_json(const nlohmann::json &doc);

  private:
    int n_qubits_;
    int n_layers_;
    Embedding embedding_;
    int range_;
    std::vector<double> theta_;
};

/// ROT(a_i, b_i, c_i) on every wire, then the entangling layer.
StateVector pqc_block(StateVector state, const PQCBlockSpec &spec, std::span<const double> layer_params);

StateVector qnn_state(const ReuploadCircuit &circuit, std::span<const double> h);
QnnOutput qnn_forward(const ReuploadCircuit &circuit, std::span<const double> h,
                      std::span<const Observable> measured);
/// All wires measured with single-Z observables.
QnnOutput qnn_forward(const ReuploadCircuit &circuit, std::span<const double> h);

/// Dense 2^n x 2^n row-major unitary of the whole circuit, built by
/// multiplying full-register matrices of every op. n <= 6.
std::vector<cplx> circuit_unitary(const ReuploadCircuit &circuit, std::span<const double> h);

/// Full-register row-major matrix of a single gate on n qubits.
std::vector<cplx> full_register_matrix(const Gate &gate, int n_qubits);

/// Gate-layer depth: (4 + n) L for angle embedding, (2^n + 3 + n) L for amplitude.
std::int64_t circuit_depth(int n_qubits, int n_layers, EmbeddingKind kind);
/// Two-qubit gate count: n/gcd(n, r) L entanglers, plus the
/// (4^n - 3n - 1)/4 L CNOT lower bound of amplitude state preparation.
std::int64_t u4_gate_count(int n_qubits, int n_layers, EmbeddingKind kind, int range = 1);

} // namespace hqnn
