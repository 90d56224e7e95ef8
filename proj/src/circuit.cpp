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

#include "hqnn/circuit.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace hqnn {

void GateProgram::add(const Gate &gate, std::array<int, 3> theta_index, int input_index) {
    gate.validate(n_qubits_);
    ProgramOp op;
    op.gate = gate;
    op.theta_index = theta_index;
    op.input_index = input_index;
    ops_.push_back(std::move(op));
}

void GateProgram::add_reflection(std::shared_ptr<const Reflector> reflector) {
    if (reflector->target().size() != (std::size_t{1} << n_qubits_)) {
        throw DimensionError("reflection size does not match program width");
    }
    ProgramOp op;
    op.type = ProgramOp::Type::REFLECTION;
    op.reflector = std::move(reflector);
    ops_.push_back(std::move(op));
}

void GateProgram::end_layer() {
    if (!ops_.empty()) {
        ops_.back().ends_layer = true;
    }
}

Gate shifted_gate(const ProgramOp &op, std::size_t op_index, const ParamShift *shift) {
    Gate g = op.gate;
    if (shift != nullptr && shift->op == op_index) {
        g.params[shift->slot] += shift->delta;
    }
    return g;
}

StateVector run_program(const GateProgram &program, const ParamShift *shift) {
    StateVector state(program.n_qubits());
    const auto &ops = program.ops();
    for (std::size_t i = 0; i < ops.size(); ++i) {
        if (ops[i].type == ProgramOp::Type::REFLECTION) {
            ops[i].reflector->apply(state);
        } else {
            state.apply(shifted_gate(ops[i], i, shift));
        }
    }
    return state;
}

std::vector<double> expectations(const StateVector &state, std::span<const Observable> observables) {
    std::vector<double> out;
    out.reserve(observables.size());
    for (const auto &obs : observables) {
        out.push_back(expectation_z(state, obs));
    }
    return out;
}

std::vector<double> expectations(const DensityMatrix &rho, std::span<const Observable> observables) {
    std::vector<double> out;
    out.reserve(observables.size());
    for (const auto &obs : observables) {
        out.push_back(expectation_z(rho, obs));
    }
    return out;
}

// ---------------------------------------------------------------------------
// PQC block

void PQCBlockSpec::validate() const {
    if (n_qubits < 1) {
        throw DimensionError("PQC block needs at least one qubit");
    }
    if (n_qubits > 1 && (range <= 0 || range >= n_qubits)) {
        throw DimensionError("entangler range must satisfy 0 < r < n, got r = " + std::to_string(range));
    }
}

std::vector<std::pair<int, int>> PQCBlockSpec::entanglers() const {
    validate();
    std::vector<std::pair<int, int>> out;
    if (n_qubits == 1) {
        return out;
    }
    const int count = n_qubits / std::gcd(n_qubits, range);
    out.reserve(count);
    for (int j = 1; j <= count; ++j) {
        out.emplace_back((j * range - range) % n_qubits, (j * range) % n_qubits);
    }
    return out;
}

StateVector pqc_block(StateVector state, const PQCBlockSpec &spec, std::span<const double> layer_params) {
    if (spec.n_qubits != state.n_qubits() || layer_params.size() != static_cast<std::size_t>(3 * spec.n_qubits)) {
        throw DimensionError("pqc_block: parameter shape must be [n][3] for the state's n");
    }
    for (int w = 0; w < spec.n_qubits; ++w) {
        state.apply(Gate::rot(w, layer_params[3 * w], layer_params[3 * w + 1], layer_params[3 * w + 2]));
    }
    for (const auto &[control, target] : spec.entanglers()) {
        state.apply(Gate::cnot(control, target));
    }
    return state;
}

// ---------------------------------------------------------------------------
// ReuploadCircuit

ReuploadCircuit::ReuploadCircuit(int n_qubits, int n_layers, Embedding embedding, std::vector<double> theta,
                                 int range)
    : n_qubits_(n_qubits), n_layers_(n_layers), embedding_(embedding), range_(n_qubits == 1 ? 0 : range),
      theta_(std::move(theta)) {
    if (n_qubits < 1 || n_qubits > 16) {
        throw DimensionError("circuit qubit count must be in [1, 16]");
    }
    if (n_layers < 0) {
        throw DimensionError("layer count must be non-negative");
    }
    block_spec().validate();
    if (theta_.size() != static_cast<std::size_t>(3 * n_qubits * n_layers)) {
        throw DimensionError("theta must hold 3 * n_qubits * n_layers angles");
    }
    for (double t : theta_) {
        if (!std::isfinite(t)) {
            throw NumericalError("non-finite circuit angle");
        }
    }
}

ReuploadCircuit ReuploadCircuit::zeros(int n_qubits, int n_layers, Embedding embedding, int range) {
    return {n_qubits, n_layers, embedding, std::vector<double>(3 * n_qubits * std::max(n_layers, 0), 0.0), range};
}

ReuploadCircuit ReuploadCircuit::random_uniform(int n_qubits, int n_layers, Embedding embedding,
                                                std::mt19937_64 &rng, int range) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::vector<double> theta(3 * n_qubits * std::max(n_layers, 0));
    for (auto &t : theta) {
        t = angle(rng);
    }
    return {n_qubits, n_layers, embedding, std::move(theta), range};
}

std::span<const double> ReuploadCircuit::layer_params(int layer) const {
    if (layer < 0 || layer >= n_layers_) {
        throw DimensionError("layer index out of range");
    }
    return std::span<const double>(theta_).subspan(flat_index(layer, 0, 0), 3 * n_qubits_);
}

ReuploadCircuit ReuploadCircuit::with_theta(std::vector<double> theta) const {
    return {n_qubits_, n_layers_, embedding_, std::move(theta), range_ == 0 ? 1 : range_};
}

void ReuploadCircuit::check_input(std::span<const double> h) const {
    if (embedding_.kind == EmbeddingKind::ANGLE) {
        if (h.size() != static_cast<std::size_t>(n_qubits_)) {
            throw DimensionError("angle embedding needs exactly " + std::to_string(n_qubits_) + " inputs, got " +
                                 std::to_string(h.size()));
        }
    } else if (h.empty() || h.size() > max_input_width()) {
        throw DimensionError("amplitude embedding accepts 1.." + std::to_string(max_input_width()) +
                             " inputs, got " + std::to_string(h.size()));
    }
    for (double v : h) {
        if (!std::isfinite(v)) {
            throw NumericalError("non-finite circuit input");
        }
    }
}

GateProgram ReuploadCircuit::compile(std::span<const double> h) const {
    check_input(h);
    GateProgram program(n_qubits_);
    std::shared_ptr<const Reflector> prep;
    if (embedding_.kind == EmbeddingKind::AMPLITUDE) {
        prep = std::make_shared<Reflector>(amplitude_vector(h, n_qubits_, embedding_.auto_normalize));
    }
    const auto entanglers = block_spec().entanglers();
    for (int l = 0; l < n_layers_; ++l) {
        if (prep) {
            program.add_reflection(prep);
        } else {
            for (int w = 0; w < n_qubits_; ++w) {
                program.add(Gate::ry(w, h[w]), {-1, -1, -1}, w);
            }
        }
        for (int w = 0; w < n_qubits_; ++w) {
            const int base = static_cast<int>(flat_index(l, w, 0));
            program.add(Gate::rot(w, theta_[base], theta_[base + 1], theta_[base + 2]), {base, base + 1, base + 2});
        }
        for (const auto &[control, target] : entanglers) {
            program.add(Gate::cnot(control, target));
        }
        program.end_layer();
    }
    return program;
}

nlohmann::ordered_json ReuploadCircuit::to_json() const {
    nlohmann::ordered_json doc;
    doc["qubits"] = n_qubits_;
    doc["layers"] = n_layers_;
    doc["embedding"] = std::string(to_string(embedding_.kind));
    doc["auto_normalize"] = embedding_.auto_normalize;
    doc["range"] = range_;
    doc["theta"] = theta_;
    return doc;
}

ReuploadCircuit ReuploadCircuit::from_json(const nlohmann::json &doc) {
    Embedding emb;
    emb.kind = embedding_kind_from_string(doc.at("embedding").get<std::string>());
    emb.auto_normalize = doc.value("auto_normalize", true);
    const int n = doc.at("qubits").get<int>();
    const int range = doc.value("range", 1);
    return {n, doc.at("layers").get<int>(), emb, doc.at("theta").get<std::vector<double>>(), n == 1 ? 1 : range};
}

StateVector qnn_state(const ReuploadCircuit &circuit, std::span<const double> h) {
    return run_program(circuit.compile(h));
}

QnnOutput qnn_forward(const ReuploadCircuit &circuit, std::span<const double> h,
                      std::span<const Observable> measured) {
    for (const auto &obs : measured) {
        if (obs.n_qubits() != circuit.n_qubits()) {
            throw DimensionError("observable width does not match the circuit");
        }
    }
    return {expectations(qnn_state(circuit, h), measured)};
}

QnnOutput qnn_forward(const ReuploadCircuit &circuit, std::span<const double> h) {
    const auto measured = single_z_observables(circuit.n_qubits());
    return qnn_forward(circuit, h, measured);
}

// ---------------------------------------------------------------------------
// dense oracle

std::vector<cplx> full_register_matrix(const Gate &gate, int n_qubits) {
    gate.validate(n_qubits);
    const std::size_t dim = std::size_t{1} << n_qubits;
    const auto local = gate_matrix(gate);
    const int k = gate.arity();
    const std::size_t ldim = std::size_t{1} << k;
    auto local_bits = [&](std::size_t index) {
        std::size_t out = 0;
        for (int i = 0; i < k; ++i) {
            const int w = gate.wires[i];
            out = (out << 1) | ((index >> (n_qubits - 1 - w)) & 1U);
        }
        return out;
    };
    std::size_t wire_mask = 0;
    for (int i = 0; i < k; ++i) {
        wire_mask |= std::size_t{1} << (n_qubits - 1 - gate.wires[i]);
    }
    std::vector<cplx> full(dim * dim, 0.0);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            if ((r & ~wire_mask) == (c & ~wire_mask)) {
                full[r * dim + c] = local[local_bits(r) * ldim + local_bits(c)];
            }
        }
    }
    return full;
}

namespace {

std::vector<cplx> matmul(const std::vector<cplx> &a, const std::vector<cplx> &b, std::size_t dim) {
    std::vector<cplx> out(dim * dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t k = 0; k < dim; ++k) {
            const cplx aik = a[i * dim + k];
            if (aik == cplx{0.0}) {
                continue;
            }
            for (std::size_t j = 0; j < dim; ++j) {
                out[i * dim + j] += aik * b[k * dim + j];
            }
        }
    }
    return out;
}

} // namespace

std::vector<cplx> circuit_unitary(const ReuploadCircuit &circuit, std::span<const double> h) {
    const int n = circuit.n_qubits();
    if (n > 6) {
        throw DimensionError("circuit_unitary is limited to 6 qubits");
    }
    const std::size_t dim = std::size_t{1} << n;
    std::vector<cplx> u(dim * dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
        u[i * dim + i] = 1.0;
    }
    const GateProgram program = circuit.compile(h);
    for (const auto &op : program.ops()) {
        std::vector<cplx> g;
        if (op.type == ProgramOp::Type::REFLECTION) {
            const auto dense = op.reflector->dense();
            g.assign(dense.begin(), dense.end());
        } else {
            g = full_register_matrix(op.gate, n);
        }
        u = matmul(g, u, dim);
    }
    return u;
}

std::int64_t circuit_depth(int n_qubits, int n_layers, EmbeddingKind kind) {
    const std::int64_t n = n_qubits;
    const std::int64_t layers = n_layers;
    if (kind == EmbeddingKind::ANGLE) {
        return (4 + n) * layers;
    }
    return ((std::int64_t{1} << n) + 3 + n) * layers;
}

std::int64_t u4_gate_count(int n_qubits, int n_layers, EmbeddingKind kind, int range) {
    const std::int64_t n = n_qubits;
    const std::int64_t layers = n_layers;
    const std::int64_t entanglers =
        n_qubits == 1 ? 0 : static_cast<std::int64_t>(PQCBlockSpec{n_qubits, range}.entanglers().size());
    std::int64_t total = entanglers * layers;
    if (kind == EmbeddingKind::AMPLITUDE) {
        // the CNOT lower bound is fractional for some n; round the total up
        total += (((std::int64_t{1} << (2 * n)) - 3 * n - 1) * layers + 3) / 4;
    }
    return total;
}

} // namespace hqnn
