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

#include "hqnn/embedding.hpp"

#include <bit>
#include <cmath>
#include <string>

namespace hqnn {

namespace {

void check_finite(std::span<const double> v, const char *what) {
    for (double x : v) {
        if (!std::isfinite(x)) {
            throw NumericalError(std::string(what) + ": non-finite input");
        }
    }
}

} // namespace

std::size_t Embedding::max_input_width(int n_qubits) const {
    return kind == EmbeddingKind::ANGLE ? static_cast<std::size_t>(n_qubits) : std::size_t{1} << n_qubits;
}

std::string_view to_string(EmbeddingKind kind) { return kind == EmbeddingKind::ANGLE ? "angle" : "amplitude"; }

EmbeddingKind embedding_kind_from_string(std::string_view name) {
    if (name == "angle" || name == "ANGLE") {
        return EmbeddingKind::ANGLE;
    }
    if (name == "amplitude" || name == "AMPLITUDE") {
        return EmbeddingKind::AMPLITUDE;
    }
    throw std::invalid_argument("unknown embedding '" + std::string(name) + "'");
}

StateVector angle_embed(std::span<const double> h) {
    if (h.empty()) {
        throw DimensionError("angle_embed: empty input");
    }
    return encode_block(StateVector(static_cast<int>(h.size())), h);
}

std::vector<double> amplitude_vector(std::span<const double> x, int n_qubits, bool auto_normalize) {
    check_finite(x, "amplitude_embed");
    const std::size_t dim = std::size_t{1} << n_qubits;
    if (x.empty() || x.size() > dim) {
        throw DimensionError("amplitude_embed: input length " + std::to_string(x.size()) +
                             " does not fit " + std::to_string(n_qubits) + " qubits");
    }
    double norm2 = 0.0;
    for (double v : x) {
        norm2 += v * v;
    }
    if (norm2 == 0.0) {
        throw NumericalError("amplitude_embed: cannot normalize the zero vector");
    }
    double scale = 1.0;
    if (auto_normalize) {
        scale = 1.0 / std::sqrt(norm2);
    } else if (std::abs(norm2 - 1.0) > 1e-9) {
        throw NumericalError("amplitude_embed: input is not unit norm");
    }
    std::vector<double> out(dim, 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = x[i] * scale;
    }
    return out;
}

StateVector amplitude_embed(std::span<const double> x, int n_qubits, bool auto_normalize) {
    const auto amps = amplitude_vector(x, n_qubits, auto_normalize);
    return StateVector::from_amplitudes({amps.begin(), amps.end()});
}

StateVector encode_block(StateVector state, std::span<const double> h) {
    if (static_cast<int>(h.size()) != state.n_qubits()) {
        throw DimensionError("encode_block: input length must equal the qubit count");
    }
    check_finite(h, "encode_block");
    for (int w = 0; w < state.n_qubits(); ++w) {
        state.apply(Gate::ry(w, h[w]));
    }
    return state;
}

Reflector::Reflector(std::vector<double> target) : target_(std::move(target)) {
    if (target_.size() < 2 || !std::has_single_bit(target_.size())) {
        throw DimensionError("Reflector: target length must be a power of two");
    }
    v_ = target_;
    for (auto &x : v_) {
        x = -x;
    }
    v_[0] += 1.0;
    double vv = 0.0;
    for (double x : v_) {
        vv += x * x;
    }
    // phi == e_0: the reflection degenerates, the identity already maps e_0 to phi.
    identity_ = vv < 1e-28;
    scale_ = identity_ ? 0.0 : 2.0 / vv;
}

void Reflector::apply(std::span<cplx> amps) const {
    if (identity_) {
        return;
    }
    if (amps.size() != v_.size()) {
        throw DimensionError("Reflector: size mismatch");
    }
    cplx dot = 0.0;
    for (std::size_t i = 0; i < v_.size(); ++i) {
        dot += v_[i] * amps[i];
    }
    dot *= scale_;
    for (std::size_t i = 0; i < v_.size(); ++i) {
        amps[i] -= v_[i] * dot;
    }
}

void Reflector::apply(DensityMatrix &rho) const {
    if (identity_) {
        return;
    }
    const std::size_t d = rho.dim();
    if (d != v_.size()) {
        throw DimensionError("Reflector: size mismatch");
    }
    auto m = rho.entries_mut();
    // columns: rho <- H rho
    std::vector<cplx> col(d);
    for (std::size_t c = 0; c < d; ++c) {
        for (std::size_t r = 0; r < d; ++r) {
            col[r] = m[r * d + c];
        }
        apply(std::span<cplx>(col));
        for (std::size_t r = 0; r < d; ++r) {
            m[r * d + c] = col[r];
        }
    }
    // rows: rho <- rho H (H is real symmetric)
    for (std::size_t r = 0; r < d; ++r) {
        apply(m.subspan(r * d, d));
    }
}

std::vector<double> Reflector::dense() const {
    const std::size_t d = v_.size();
    std::vector<double> out(d * d, 0.0);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            out[r * d + c] = (r == c ? 1.0 : 0.0) - scale_ * v_[r] * v_[c];
        }
    }
    return out;
}

} // namespace hqnn
