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

#include <span>
#include <string_view>
#include <vector>

#include "hqnn/state.hpp"

namespace hqnn {

enum class EmbeddingKind { ANGLE, AMPLITUDE };

struct Embedding {
    EmbeddingKind kind = EmbeddingKind::ANGLE;
    /// AMPLITUDE only: divide the input by its l2 norm instead of requiring unit norm.
    bool auto_normalize = true;

    /// Largest accepted input length for a circuit of n qubits.
    std::size_t max_input_width(int n_qubits) const;
};

std::string_view to_string(EmbeddingKind kind);
EmbeddingKind embedding_kind_from_string(std::string_view name);

/// Product state prod_i (cos(h_i/2)|0> + sin(h_i/2)|1>). Any finite angle is accepted.
StateVector angle_embed(std::span<const double> h);

/// Writes x (zero padded to 2^n) directly as the amplitudes.
StateVector amplitude_embed(std::span<const double> x, int n_qubits, bool auto_normalize);

/// Normalized, zero-padded real amplitude vector for x.
std::vector<double> amplitude_vector(std::span<const double> x, int n_qubits, bool auto_normalize);

/// Data block S(h): RY(h_i) on wire i.
StateVector encode_block(StateVector state, std::span<const double> h);

/**
 * Real Householder reflection H = I - 2 v v^T / (v^T v) with v = e_0 - phi,
 * which maps |0...0> to the real unit vector phi. It is the state
 * preparation unitary used for amplitude re-uploading; applying it costs
 * O(2^n) instead of a dense matrix product.
 */
class Reflector {
  public:
    explicit Reflector(std::vector<double> target);

    const std::vector<double> &target() const { return target_; }
    bool is_identity() const { return identity_; }

    void apply(std::span<cplx> amps) const;
    void apply(StateVector &state) const { apply(state.amplitudes_mut()); }
    /// rho -> H rho H.
    void apply(DensityMatrix &rho) const;

    /// Dense row-major matrix, for oracles.
    std::vector<double> dense() const;

  private:
    std::vector<double> target_;
    std::vector<double> v_;
    double scale_ = 0.0; // 2 / (v^T v)
    bool identity_ = false;
};

} // namespace hqnn
