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

#include "hqnn/noise.hpp"

#include <cmath>
#include <string>

namespace hqnn {

namespace {

void check_rate(double rate, const char *what) {
    if (!(rate >= 0.0 && rate <= 1.0)) {
        throw NumericalError(std::string(what) + ": rate must lie in [0, 1], got " + std::to_string(rate));
    }
}

// Visits the 2x2 wire blocks [[a, b], [c, d]] of rho for one wire; every
// entry of rho belongs to exactly one block.
template <class F> void for_each_wire_block(DensityMatrix &rho, int wire, F &&f) {
    const int n = rho.n_qubits();
    if (wire < 0 || wire >= n) {
        throw DimensionError("channel wire out of range");
    }
    const std::size_t row_bit = std::size_t{1} << (2 * n - 1 - wire);
    const std::size_t col_bit = std::size_t{1} << (n - 1 - wire);
    auto m = rho.entries_mut();
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i & (row_bit | col_bit)) {
            continue;
        }
        f(m[i], m[i | col_bit], m[i | row_bit], m[i | row_bit | col_bit]);
    }
}

void depolarize_inplace(DensityMatrix &rho, int wire, double p) {
    const double keep_diag = 1.0 - 2.0 * p / 3.0;
    const double swap_diag = 2.0 * p / 3.0;
    const double off = 1.0 - 4.0 * p / 3.0;
    for_each_wire_block(rho, wire, [&](cplx &a, cplx &b, cplx &c, cplx &d) {
        const cplx a0 = a;
        a = keep_diag * a0 + swap_diag * d;
        d = keep_diag * d + swap_diag * a0;
        b *= off;
        c *= off;
    });
}

void amp_damp_inplace(DensityMatrix &rho, int wire, double gamma) {
    const double s = std::sqrt(1.0 - gamma);
    for_each_wire_block(rho, wire, [&](cplx &a, cplx &b, cplx &c, cplx &d) {
        a += gamma * d;
        d *= 1.0 - gamma;
        b *= s;
        c *= s;
    });
}

} // namespace

std::string_view to_string(NoiseChannel channel) {
    switch (channel) {
    case NoiseChannel::DEPOLARIZING:
        return "depolarizing";
    case NoiseChannel::AMPLITUDE_DAMPING:
        return "amplitude_damping";
    case NoiseChannel::NONE:
        break;
    }
    return "none";
}

NoiseChannel noise_channel_from_string(std::string_view name) {
    for (auto c : {NoiseChannel::NONE, NoiseChannel::DEPOLARIZING, NoiseChannel::AMPLITUDE_DAMPING}) {
        if (name == to_string(c)) {
            return c;
        }
    }
    throw std::invalid_argument("unknown noise channel '" + std::string(name) + "'");
}

std::string_view to_string(NoiseInsertion insertion) {
    return insertion == NoiseInsertion::AFTER_EACH_GATE ? "after_each_gate" : "after_each_layer";
}

NoiseInsertion noise_insertion_from_string(std::string_view name) {
    if (name == "after_each_gate") {
        return NoiseInsertion::AFTER_EACH_GATE;
    }
    if (name == "after_each_layer") {
        return NoiseInsertion::AFTER_EACH_LAYER;
    }
    throw std::invalid_argument("unknown noise insertion '" + std::string(name) + "'");
}

void NoiseModel::validate() const { check_rate(rate, "noise model"); }

DensityMatrix depolarize(DensityMatrix rho, int wire, double p) {
    check_rate(p, "depolarize");
    depolarize_inplace(rho, wire, p);
    return rho;
}

DensityMatrix amp_damp(DensityMatrix rho, int wire, double gamma) {
    check_rate(gamma, "amp_damp");
    amp_damp_inplace(rho, wire, gamma);
    return rho;
}

void apply_channel(DensityMatrix &rho, int wire, const NoiseModel &noise) {
    const double rate = noise.effective_rate();
    if (rate == 0.0) {
        return;
    }
    check_rate(rate, "apply_channel");
    if (noise.channel == NoiseChannel::DEPOLARIZING) {
        depolarize_inplace(rho, wire, rate);
    } else {
        amp_damp_inplace(rho, wire, rate);
    }
}

DensityMatrix run_program_noisy(const GateProgram &program, const NoiseModel &noise, const ParamShift *shift) {
    noise.validate();
    const int n = program.n_qubits();
    if (n > kMaxNoisyQubits) {
        throw DimensionError("noisy simulation is limited to " + std::to_string(kMaxNoisyQubits) + " qubits");
    }
    const bool per_gate = noise.insertion == NoiseInsertion::AFTER_EACH_GATE;
    DensityMatrix rho(n);
    const auto &ops = program.ops();
    for (std::size_t i = 0; i < ops.size(); ++i) {
        const auto &op = ops[i];
        if (op.type == ProgramOp::Type::REFLECTION) {
            op.reflector->apply(rho);
            if (per_gate) {
                for (int w = 0; w < n; ++w) {
                    apply_channel(rho, w, noise);
                }
            }
        } else {
            const Gate g = shifted_gate(op, i, shift);
            rho.apply(g);
            if (per_gate) {
                for (int k = 0; k < g.arity(); ++k) {
                    apply_channel(rho, g.wires[k], noise);
                }
            }
        }
        if (!per_gate && op.ends_layer) {
            for (int w = 0; w < n; ++w) {
                apply_channel(rho, w, noise);
            }
        }
    }
    return rho;
}

ProgramEvaluator noisy_evaluator(std::vector<Observable> measured, NoiseModel noise) {
    noise.validate();
    return [measured = std::move(measured), noise](const GateProgram &program, const ParamShift *shift) {
        return expectations(run_program_noisy(program, noise, shift), measured);
    };
}

QnnOutput noisy_forward(const ReuploadCircuit &circuit, std::span<const double> h, const NoiseModel &noise,
                        std::span<const Observable> measured) {
    if (circuit.n_qubits() > kMaxNoisyQubits) {
        throw DimensionError("noisy simulation is limited to " + std::to_string(kMaxNoisyQubits) + " qubits");
    }
    return {expectations(run_program_noisy(circuit.compile(h), noise), measured)};
}

std::vector<double> noisy_param_shift_grad(const ReuploadCircuit &circuit, std::span<const double> h,
                                           const NoiseModel &noise, std::span<const Observable> measured,
                                           std::span<const double> upstream) {
    if (circuit.n_qubits() > kMaxNoisyQubits) {
        throw DimensionError("noisy simulation is limited to " + std::to_string(kMaxNoisyQubits) + " qubits");
    }
    return theta_shift_gradient(circuit.compile(h), circuit.quantum_param_count(),
                                noisy_evaluator({measured.begin(), measured.end()}, noise), upstream);
}

} // namespace hqnn
