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

#include "hqnn/gradients.hpp"

#include <numbers>
#include <stdexcept>

namespace hqnn {

namespace {

constexpr double kShift = std::numbers::pi / 2;

bool all_zero(std::span<const double> v) {
    for (double x : v) {
        if (x != 0.0) {
            return false;
        }
    }
    return true;
}

double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw DimensionError("upstream gradient width does not match the measured observables");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += a[i] * b[i];
    }
    return acc;
}

double shifted_difference(const GateProgram &program, std::size_t op, int slot, const ProgramEvaluator &evaluate,
                          std::span<const double> upstream) {
    const ParamShift plus{op, slot, kShift};
    const ParamShift minus{op, slot, -kShift};
    const auto up = evaluate(program, &plus);
    const auto down = evaluate(program, &minus);
    return 0.5 * (dot(up, upstream) - dot(down, upstream));
}

} // namespace

ProgramEvaluator pure_evaluator(std::vector<Observable> measured) {
    return [measured = std::move(measured)](const GateProgram &program, const ParamShift *shift) {
        return expectations(run_program(program, shift), measured);
    };
}

std::vector<double> theta_shift_gradient(const GateProgram &program, std::size_t n_theta,
                                         const ProgramEvaluator &evaluate, std::span<const double> upstream) {
    std::vector<double> grad(n_theta, 0.0);
    if (all_zero(upstream)) {
        return grad;
    }
    const auto &ops = program.ops();
    for (std::size_t i = 0; i < ops.size(); ++i) {
        for (int slot = 0; slot < 3; ++slot) {
            const int j = ops[i].theta_index[slot];
            if (j < 0) {
                continue;
            }
            if (static_cast<std::size_t>(j) >= n_theta) {
                throw DimensionError("program references a theta index beyond the gradient size");
            }
            grad[j] += shifted_difference(program, i, slot, evaluate, upstream);
        }
    }
    return grad;
}

std::vector<double> input_shift_gradient(const GateProgram &program, std::size_t n_inputs,
                                         const ProgramEvaluator &evaluate, std::span<const double> upstream) {
    std::vector<double> grad(n_inputs, 0.0);
    if (all_zero(upstream)) {
        return grad;
    }
    const auto &ops = program.ops();
    for (std::size_t i = 0; i < ops.size(); ++i) {
        const int k = ops[i].input_index;
        if (k < 0) {
            continue;
        }
        if (static_cast<std::size_t>(k) >= n_inputs) {
            throw DimensionError("program references an input index beyond the gradient size");
        }
        grad[k] += shifted_difference(program, i, 0, evaluate, upstream);
    }
    return grad;
}

std::vector<double> param_shift_grad(const ReuploadCircuit &circuit, std::span<const double> h,
                                     std::span<const Observable> measured, std::span<const double> upstream) {
    const auto program = circuit.compile(h);
    return theta_shift_gradient(program, circuit.quantum_param_count(),
                                pure_evaluator({measured.begin(), measured.end()}), upstream);
}

std::vector<double> input_shift_grad(const ReuploadCircuit &circuit, std::span<const double> h,
                                     std::span<const Observable> measured, std::span<const double> upstream) {
    if (circuit.embedding().kind != EmbeddingKind::ANGLE) {
        throw std::invalid_argument("input_shift_grad requires angle embedding");
    }
    const auto program = circuit.compile(h);
    return input_shift_gradient(program, h.size(), pure_evaluator({measured.begin(), measured.end()}), upstream);
}

std::vector<double> input_fd_gradient(const ReuploadCircuit &circuit, std::span<const double> h,
                                      const ProgramEvaluator &evaluate, std::span<const double> upstream,
                                      double step) {
    std::vector<double> grad(h.size(), 0.0);
    if (all_zero(upstream)) {
        return grad;
    }
    std::vector<double> probe(h.begin(), h.end());
    for (std::size_t i = 0; i < h.size(); ++i) {
        probe[i] = h[i] + step;
        const double up = dot(evaluate(circuit.compile(probe), nullptr), upstream);
        probe[i] = h[i] - step;
        const double down = dot(evaluate(circuit.compile(probe), nullptr), upstream);
        probe[i] = h[i];
        grad[i] = (up - down) / (2.0 * step);
    }
    return grad;
}

} // namespace hqnn
