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
 * @file gradients.hpp
 * @brief Parameter-shift gradients of circuit expectations.
 *
 * Every trainable or data-dependent angle in a compiled program enters
 * through a rotation exp(-i t P / 2) with P a Pauli, so
 *
 *     d<B>/dt = ( <B>(t + pi/2) - <B>(t - pi/2) ) / 2
 *
 * holds exactly. Each evaluation returns all measured expectations at once,
 * so a parameter costs two program runs regardless of how many observables
 * are measured. Upstream weights combine the per-observable derivatives by
 * the chain rule.
 */

#include <functional>
#include <span>
#include <vector>

#include "hqnn/circuit.hpp"

namespace hqnn {

/// Runs a program (optionally with one shifted slot) and returns the
/// measured expectations. Pure-state and noisy backends both provide one.
using ProgramEvaluator = std::function<std::vector<double>(const GateProgram &, const ParamShift *)>;

ProgramEvaluator pure_evaluator(std::vector<Observable> measured);

/// sum_k upstream[k] * d<O_k>/d theta_j for every flat theta index j < n_theta.
std::vector<double> theta_shift_gradient(const GateProgram &program, std::size_t n_theta,
                                         const ProgramEvaluator &evaluate, std::span<const double> upstream);

/// Same for the input components feeding RY data blocks. An input that is
/// uploaded in several layers collects one shifted pair per occurrence.
std::vector<double> input_shift_gradient(const GateProgram &program, std::size_t n_inputs,
                                         const ProgramEvaluator &evaluate, std::span<const double> upstream);

std::vector<double> param_shift_grad(const ReuploadCircuit &circuit, std::span<const double> h,
                                     std::span<const Observable> measured, std::span<const double> upstream);

/// Angle embedding only; throws std::invalid_argument for amplitude circuits.
std::vector<double> input_shift_grad(const ReuploadCircuit &circuit, std::span<const double> h,
                                     std::span<const Observable> measured, std::span<const double> upstream);

/// Central finite differences of upstream . <O>(h) with respect to h. Used
/// for amplitude-embedded inputs, which have no two-term shift rule.
std::vector<double> input_fd_gradient(const ReuploadCircuit &circuit, std::span<const double> h,
                                      const ProgramEvaluator &evaluate, std::span<const double> upstream,
                                      double step = 1e-5);

} // namespace hqnn
