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

#include <cstddef>
#include <random>

#include "hqnn/harness.hpp"

namespace hqnn {

struct GradCheckReport {
    std::size_t n_params = 0;
    double max_rel_error = 0.0;
    double max_abs_error = 0.0;
    std::size_t worst_param = 0;
};

/// Relative error |a - b| / max(|a|, |b|, floor). The floor keeps
/// vanishing gradients from turning rounding noise into large ratios.
double relative_error(double a, double b, double floor = 1e-4);

/// Compares the model's assembled gradient of the batch MSE with central
/// finite differences of the same loss, one parameter at a time.
GradCheckReport finite_difference_audit(const Model &model, std::span<const Sample *const> batch,
                                        double step = 1e-5, double floor = 1e-4);

/// Random hybrid model for gradient audits: 1..max_qubits qubits,
/// 1..max_layers layers, angle embedding, an embedding net of depth 1 or 2
/// (hidden width <= 4) with a random activation, and optionally a regression
/// net. Inputs have dimension input_dim.
HybridModel random_audit_model(std::mt19937_64 &rng, int max_qubits, int max_layers, int input_dim);

/// Random samples with x in (0, 3]^input_dim and y in [-1, 1].
Dataset random_audit_batch(std::mt19937_64 &rng, int input_dim, int n_samples);

} // namespace hqnn
