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
 * @file circuit_metrics.hpp
 * @brief Expressibility and entangling capability of parameterized circuit
 * families.
 *
 * Expressibility is D_KL(P_circuit(F) || P_Haar(F)) over a fidelity
 * histogram of state pairs; entangling capability is the mean Meyer-Wallach
 * Q of sampled states.
 */

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "hqnn/state.hpp"

namespace hqnn {

struct SamplingPlan {
    int n_samples = 1000;
    int n_bins = 75;
    int n_runs = 4;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Probability floor given to empty histogram bins before renormalizing.
inline constexpr double kKlFloor = 1e-9;

/// (N - 1)(1 - F)^(N - 2) for F in [0, 1].
double haar_pdf(double fidelity, std::int64_t dim);

/// Exact Haar probability of each of n_bins equal-width bins on [0, 1]:
/// (1 - a)^(N-1) - (1 - b)^(N-1).
std::vector<double> haar_bin_masses(int n_bins, std::int64_t dim);

/// Normalized histogram over n_bins equal-width bins on [0, 1]. F = 1 lands
/// in the last bin.
std::vector<double> fidelity_histogram(std::span<const double> fidelities, int n_bins);

/// KL(p || q) after flooring both at kKlFloor and renormalizing.
double kl_divergence(std::span<const double> p, std::span<const double> q);

double kl_from_fidelities(std::span<const double> fidelities, int n_bins, std::int64_t dim);

/// Produces one state per call from uniformly drawn parameters.
struct CircuitFamily {
    std::string name;
    int n_qubits = 1;
    std::function<StateVector(std::mt19937_64 &)> sample;
};

/// L stacked PQC blocks on |0...0>, every angle uniform in [0, 2pi). With
/// include_data, each block is preceded by an RY layer whose angles are
/// also uniform parameters.
CircuitFamily pqc_family(int n_qubits, int n_layers, int range = 1, bool include_data = false);
/// ROT layers without entanglers.
CircuitFamily rotations_only_family(int n_qubits, int n_layers);
/// Always returns |0...0>.
CircuitFamily constant_family(int n_qubits);
/// Haar-random pure states (normalized complex Gaussian vectors).
CircuitFamily haar_family(int n_qubits);

struct MetricEstimate {
    double mean = 0.0;
    /// Sample std of the per-run estimates.
    double std_over_runs = 0.0;
    /// Pooled std of the per-state quantity across all runs. Equals
    /// std_over_runs for expressibility, which has no per-state value.
    double sample_std = 0.0;
    std::vector<double> runs;
};

/// Q = 2 (1 - mean_k Tr rho_k^2). Zero for a single qubit.
double meyer_wallach(const StateVector &state);

MetricEstimate expressibility(const CircuitFamily &family, const SamplingPlan &plan);
MetricEstimate entangling_capability(const CircuitFamily &family, const SamplingPlan &plan);

} // namespace hqnn
