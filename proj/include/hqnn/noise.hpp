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
 * @file noise.hpp
 * @brief Single-qubit noise channels and density-matrix circuit evaluation.
 *
 * Depolarizing uses the Pauli-twirl form
 *     rho -> (1 - p) rho + p/3 (X rho X + Y rho Y + Z rho Z),
 * which contracts <Z> on the affected wire by (1 - 4p/3). Amplitude damping
 * uses K0 = [[1, 0], [0, sqrt(1 - g)]], K1 = [[0, sqrt(g)], [0, 0]].
 */

#include <span>
#include <string_view>
#include <vector>

#include "hqnn/circuit.hpp"
#include "hqnn/gradients.hpp"
#include "hqnn/state.hpp"

namespace hqnn {

enum class NoiseChannel { NONE, DEPOLARIZING, AMPLITUDE_DAMPING };
enum class NoiseInsertion { AFTER_EACH_GATE, AFTER_EACH_LAYER };

std::string_view to_string(NoiseChannel channel);
NoiseChannel noise_channel_from_string(std::string_view name);
std::string_view to_string(NoiseInsertion insertion);
NoiseInsertion noise_insertion_from_string(std::string_view name);

struct NoiseModel {
    NoiseChannel channel = NoiseChannel::NONE;
    double rate = 0.0;
    NoiseInsertion insertion = NoiseInsertion::AFTER_EACH_GATE;

    /// Throws NumericalError unless rate is in [0, 1].
    void validate() const;
    /// NONE always acts with rate 0.
    double effective_rate() const { return channel == NoiseChannel::NONE ? 0.0 : rate; }
    bool is_noiseless() const { return effective_rate() == 0.0; }
};

DensityMatrix depolarize(DensityMatrix rho, int wire, double p);
DensityMatrix amp_damp(DensityMatrix rho, int wire, double gamma);

/// In-place channel application on one wire.
void apply_channel(DensityMatrix &rho, int wire, const NoiseModel &noise);

/// Largest qubit count accepted by the density-matrix backend.
inline constexpr int kMaxNoisyQubits = 10;

/// Evolves |0...0><0...0| through the program, inserting channels per the
/// noise model: on the acted wires after every op, or on all wires at the
/// end of every re-uploading layer.
DensityMatrix run_program_noisy(const GateProgram &program, const NoiseModel &noise,
                                const ParamShift *shift = nullptr);

ProgramEvaluator noisy_evaluator(std::vector<Observable> measured, NoiseModel noise);

QnnOutput noisy_forward(const ReuploadCircuit &circuit, std::span<const double> h, const NoiseModel &noise,
                        std::span<const Observable> measured);

/// Shift rule applied to noisy expectations, i.e. to the effective
/// observable E^dagger[B].
std::vector<double> noisy_param_shift_grad(const ReuploadCircuit &circuit, std::span<const double> h,
                                           const NoiseModel &noise, std::span<const Observable> measured,
                                           std::span<const double> upstream);

} // namespace hqnn
