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

#include "hqnn/circuit_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hqnn/circuit.hpp"

namespace hqnn {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double mean_of(std::span<const double> v) {
    double acc = 0.0;
    for (double x : v) {
        acc += x;
    }
    return acc / static_cast<double>(v.size());
}

// Sample standard deviation; 0 for fewer than two values.
double std_of(std::span<const double> v) {
    if (v.size() < 2) {
        return 0.0;
    }
    const double mu = mean_of(v);
    double acc = 0.0;
    for (double x : v) {
        acc += (x - mu) * (x - mu);
    }
    return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

std::mt19937_64 run_stream(const SamplingPlan &plan, int run) {
    std::seed_seq seq{static_cast<std::uint32_t>(plan.seed), static_cast<std::uint32_t>(plan.seed >> 32),
                      static_cast<std::uint32_t>(run)};
    return std::mt19937_64(seq);
}

void check_dim(std::int64_t dim) {
    if (dim < 2) {
        throw std::invalid_argument("Haar distribution needs dimension N >= 2");
    }
}

} // namespace

void SamplingPlan::validate() const {
    if (n_samples < 1 || n_bins < 1 || n_runs < 1) {
        throw std::invalid_argument("sampling plan counts must be positive");
    }
    if (n_samples < n_bins) {
        throw std::invalid_argument("sampling plan needs n_samples >= n_bins");
    }
}

double haar_pdf(double fidelity, std::int64_t dim) {
    check_dim(dim);
    if (!(fidelity >= 0.0 && fidelity <= 1.0)) {
        throw std::invalid_argument("fidelity must lie in [0, 1]");
    }
    const double n = static_cast<double>(dim);
    if (dim == 2) {
        return 1.0;
    }
    return (n - 1.0) * std::pow(1.0 - fidelity, n - 2.0);
}

std::vector<double> haar_bin_masses(int n_bins, std::int64_t dim) {
    check_dim(dim);
    if (n_bins < 1) {
        throw std::invalid_argument("n_bins must be positive");
    }
    const double e = static_cast<double>(dim) - 1.0;
    std::vector<double> masses(n_bins);
    for (int b = 0; b < n_bins; ++b) {
        const double lo = static_cast<double>(b) / n_bins;
        const double hi = static_cast<double>(b + 1) / n_bins;
        masses[b] = std::pow(1.0 - lo, e) - std::pow(1.0 - hi, e);
    }
    return masses;
}

std::vector<double> fidelity_histogram(std::span<const double> fidelities, int n_bins) {
    if (n_bins < 1 || fidelities.empty()) {
        throw std::invalid_argument("fidelity_histogram: need samples and a positive bin count");
    }
    std::vector<double> hist(n_bins, 0.0);
    for (double f : fidelities) {
        const double c = std::clamp(f, 0.0, 1.0);
        const int b = std::min(n_bins - 1, static_cast<int>(c * n_bins));
        hist[b] += 1.0;
    }
    for (auto &h : hist) {
        h /= static_cast<double>(fidelities.size());
    }
    return hist;
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size() || p.empty()) {
        throw DimensionError("kl_divergence: distributions must have the same non-zero length");
    }
    auto floored = [](std::span<const double> v) {
        std::vector<double> out(v.begin(), v.end());
        double total = 0.0;
        for (auto &x : out) {
            x = std::max(x, kKlFloor);
            total += x;
        }
        for (auto &x : out) {
            x /= total;
        }
        return out;
    };
    const auto pf = floored(p);
    const auto qf = floored(q);
    double kl = 0.0;
    for (std::size_t i = 0; i < pf.size(); ++i) {
        kl += pf[i] * std::log(pf[i] / qf[i]);
    }
    // Rounding can leave a tiny negative value for identical inputs.
    return std::max(kl, 0.0);
}

double kl_from_fidelities(std::span<const double> fidelities, int n_bins, std::int64_t dim) {
    const auto hist = fidelity_histogram(fidelities, n_bins);
    const auto haar = haar_bin_masses(n_bins, dim);
    return kl_divergence(hist, haar);
}

// ---------------------------------------------------------------------------
// Families

CircuitFamily pqc_family(int n_qubits, int n_layers, int range, bool include_data) {
    if (n_layers < 1) {
        throw std::invalid_argument("pqc_family: need at least one layer");
    }
    const PQCBlockSpec spec{n_qubits, n_qubits == 1 ? 0 : range};
    spec.validate();
    std::string name = "pqc(n=" + std::to_string(n_qubits) + ",L=" + std::to_string(n_layers) + ")";
    return {name, n_qubits, [spec, n_layers, include_data](std::mt19937_64 &rng) {
                std::uniform_real_distribution<double> angle(0.0, kTwoPi);
                std::vector<double> params(3 * spec.n_qubits);
                StateVector state(spec.n_qubits);
                for (int l = 0; l < n_layers; ++l) {
                    if (include_data) {
                        for (int w = 0; w < spec.n_qubits; ++w) {
                            state.apply(Gate::ry(w, angle(rng)));
                        }
                    }
                    for (auto &p : params) {
                        p = angle(rng);
                    }
                    state = pqc_block(std::move(state), spec, params);
                }
                return state;
            }};
}

CircuitFamily rotations_only_family(int n_qubits, int n_layers) {
    return {"rotations(n=" + std::to_string(n_qubits) + ")", n_qubits, [n_qubits, n_layers](std::mt19937_64 &rng) {
                std::uniform_real_distribution<double> angle(0.0, kTwoPi);
                StateVector state(n_qubits);
                for (int l = 0; l < n_layers; ++l) {
                    for (int w = 0; w < n_qubits; ++w) {
                        const double a = angle(rng);
                        const double b = angle(rng);
                        const double c = angle(rng);
                        state.apply(Gate::rot(w, a, b, c));
                    }
                }
                return state;
            }};
}

CircuitFamily constant_family(int n_qubits) {
    return {"constant", n_qubits, [n_qubits](std::mt19937_64 &) { return StateVector(n_qubits); }};
}

CircuitFamily haar_family(int n_qubits) {
    return {"haar", n_qubits, [n_qubits](std::mt19937_64 &rng) {
                std::normal_distribution<double> g(0.0, 1.0);
                std::vector<cplx> amps(std::size_t{1} << n_qubits);
                double norm = 0.0;
                for (auto &a : amps) {
                    const double re = g(rng);
                    const double im = g(rng);
                    a = {re, im};
                    norm += re * re + im * im;
                }
                const double s = 1.0 / std::sqrt(norm);
                for (auto &a : amps) {
                    a *= s;
                }
                return StateVector::from_amplitudes(std::move(amps));
            }};
}

// ---------------------------------------------------------------------------
// Metrics

double meyer_wallach(const StateVector &state) {
    const int n = state.n_qubits();
    if (n < 2) {
        return 0.0;
    }
    double purity_sum = 0.0;
    for (int k = 0; k < n; ++k) {
        purity_sum += partial_trace(state, k).purity();
    }
    return std::clamp(2.0 * (1.0 - purity_sum / n), 0.0, 1.0);
}

MetricEstimate expressibility(const CircuitFamily &family, const SamplingPlan &plan) {
    plan.validate();
    const std::int64_t dim = std::int64_t{1} << family.n_qubits;
    MetricEstimate est;
    std::vector<double> fids(plan.n_samples);
    for (int run = 0; run < plan.n_runs; ++run) {
        auto rng = run_stream(plan, run);
        for (auto &f : fids) {
            const auto a = family.sample(rng);
            const auto b = family.sample(rng);
            f = fidelity(a, b);
        }
        est.runs.push_back(kl_from_fidelities(fids, plan.n_bins, dim));
    }
    est.mean = mean_of(est.runs);
    est.std_over_runs = std_of(est.runs);
    est.sample_std = est.std_over_runs;
    return est;
}

MetricEstimate entangling_capability(const CircuitFamily &family, const SamplingPlan &plan) {
    plan.validate();
    MetricEstimate est;
    std::vector<double> all;
    all.reserve(static_cast<std::size_t>(plan.n_samples) * plan.n_runs);
    for (int run = 0; run < plan.n_runs; ++run) {
        auto rng = run_stream(plan, run);
        double acc = 0.0;
        for (int s = 0; s < plan.n_samples; ++s) {
            const double q = meyer_wallach(family.sample(rng));
            acc += q;
            all.push_back(q);
        }
        est.runs.push_back(acc / plan.n_samples);
    }
    est.mean = mean_of(est.runs);
    est.std_over_runs = std_of(est.runs);
    est.sample_std = std_of(all);
    return est;
}

} // namespace hqnn
