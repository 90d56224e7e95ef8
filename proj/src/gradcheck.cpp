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

#include "hqnn/gradcheck.hpp"

#include <algorithm>
#include <cmath>

namespace hqnn {

double relative_error(double a, double b, double floor) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

namespace {

template <class M> double batch_loss(const M &model, std::span<const Sample *const> batch) {
    double acc = 0.0;
    for (const Sample *s : batch) {
        acc += mse_loss(model.predict(s->x), s->y);
    }
    return acc / static_cast<double>(batch.size());
}

template <class M>
GradCheckReport audit(const M &model, std::span<const Sample *const> batch, double step, double floor) {
    std::vector<double> grad;
    model.loss_and_gradient(batch, grad);
    const auto base = model.parameters();
    GradCheckReport report;
    report.n_params = base.size();
    M probe = model;
    auto params = base;
    for (std::size_t i = 0; i < base.size(); ++i) {
        params[i] = base[i] + step;
        probe.set_parameters(params);
        const double up = batch_loss(probe, batch);
        params[i] = base[i] - step;
        probe.set_parameters(params);
        const double down = batch_loss(probe, batch);
        params[i] = base[i];
        const double fd = (up - down) / (2.0 * step);
        const double rel = relative_error(grad[i], fd, floor);
        report.max_abs_error = std::max(report.max_abs_error, std::abs(grad[i] - fd));
        if (rel > report.max_rel_error) {
            report.max_rel_error = rel;
            report.worst_param = i;
        }
    }
    return report;
}

} // namespace

GradCheckReport finite_difference_audit(const Model &model, std::span<const Sample *const> batch, double step,
                                        double floor) {
    if (batch.empty()) {
        throw std::invalid_argument("finite_difference_audit: empty batch");
    }
    return std::visit([&](const auto &m) { return audit(m, batch, step, floor); }, model);
}

HybridModel random_audit_model(std::mt19937_64 &rng, int max_qubits, int max_layers, int input_dim) {
    std::uniform_int_distribution<int> qubits(1, max_qubits);
    std::uniform_int_distribution<int> layers(1, max_layers);
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<int> hidden(1, 4);
    const Activation acts[] = {Activation::TANH, Activation::SIGMOID, Activation::IDENTITY};
    std::uniform_int_distribution<int> pick(0, 2);

    const int n = qubits(rng);
    const int L = layers(rng);
    auto circuit = ReuploadCircuit::random_uniform(n, L, Embedding{}, rng);
    std::vector<int> widths{input_dim};
    std::vector<Activation> embed_acts;
    if (coin(rng) == 1) {
        widths.push_back(hidden(rng));
        embed_acts.push_back(acts[pick(rng)]);
    }
    widths.push_back(n);
    embed_acts.push_back(acts[pick(rng)]);
    auto embed = DenseNet::random(widths, embed_acts, rng);
    std::optional<DenseNet> regress;
    if (coin(rng) == 1) {
        regress = DenseNet::random({n, hidden(rng), 1}, {Activation::TANH, Activation::IDENTITY}, rng);
    }
    return HybridModel(std::move(embed), std::move(circuit), std::move(regress));
}

Dataset random_audit_batch(std::mt19937_64 &rng, int input_dim, int n_samples) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Dataset batch;
    for (int i = 0; i < n_samples; ++i) {
        Sample s;
        for (int k = 0; k < input_dim; ++k) {
            s.x.push_back(3.0 * (1.0 - unit(rng)));
        }
        s.y = {2.0 * unit(rng) - 1.0};
        batch.push_back(std::move(s));
    }
    return batch;
}

} // namespace hqnn
