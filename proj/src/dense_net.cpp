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

#include "hqnn/dense_net.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hqnn/state.hpp"

namespace hqnn {

namespace {

std::atomic<std::uint64_t> g_revision{1};

std::uint64_t next_revision() { return g_revision.fetch_add(1, std::memory_order_relaxed) + 1; }

double activate(Activation act, double z) {
    switch (act) {
    case Activation::RELU:
        return z > 0.0 ? z : 0.0;
    case Activation::TANH:
        return std::tanh(z);
    case Activation::SIGMOID:
        return 1.0 / (1.0 + std::exp(-z));
    case Activation::IDENTITY:
        break;
    }
    return z;
}

double activate_grad(Activation act, double z) {
    switch (act) {
    case Activation::RELU:
        return z > 0.0 ? 1.0 : 0.0;
    case Activation::TANH: {
        const double t = std::tanh(z);
        return 1.0 - t * t;
    }
    case Activation::SIGMOID: {
        const double s = 1.0 / (1.0 + std::exp(-z));
        return s * (1.0 - s);
    }
    case Activation::IDENTITY:
        break;
    }
    return 1.0;
}

std::vector<Activation> default_activations(std::size_t layers, Activation hidden, Activation output) {
    std::vector<Activation> acts(layers, hidden);
    if (!acts.empty()) {
        acts.back() = output;
    }
    return acts;
}

} // namespace

std::string_view to_string(Activation act) {
    switch (act) {
    case Activation::RELU:
        return "relu";
    case Activation::TANH:
        return "tanh";
    case Activation::SIGMOID:
        return "sigmoid";
    case Activation::IDENTITY:
        break;
    }
    return "identity";
}

Activation activation_from_string(std::string_view name) {
    for (auto act : {Activation::RELU, Activation::TANH, Activation::SIGMOID, Activation::IDENTITY}) {
        if (name == to_string(act)) {
            return act;
        }
    }
    throw std::invalid_argument("unknown activation '" + std::string(name) + "'");
}

DenseNet::DenseNet(std::vector<int> widths, std::vector<Activation> activations) : widths_(std::move(widths)) {
    if (widths_.size() < 2) {
        throw DimensionError("a dense net needs at least input and output widths");
    }
    if (activations.size() != widths_.size() - 1) {
        throw DimensionError("one activation per layer is required");
    }
    for (int w : widths_) {
        if (w < 1) {
            throw DimensionError("layer widths must be positive");
        }
    }
    for (std::size_t l = 0; l + 1 < widths_.size(); ++l) {
        DenseLayer layer;
        layer.in = widths_[l];
        layer.out = widths_[l + 1];
        layer.weights.assign(static_cast<std::size_t>(layer.in) * layer.out, 0.0);
        layer.biases.assign(layer.out, 0.0);
        layer.activation = activations[l];
        layers_.push_back(std::move(layer));
    }
    revision_ = next_revision();
}

DenseNet::DenseNet(std::vector<int> widths, Activation hidden, Activation output)
    : DenseNet(widths, default_activations(widths.size() - 1, hidden, output)) {}

DenseNet DenseNet::random(std::vector<int> widths, std::vector<Activation> activations, std::mt19937_64 &rng) {
    DenseNet net(std::move(widths), std::move(activations));
    for (auto &layer : net.layers_) {
        const double bound = std::sqrt(1.0 / layer.in);
        std::uniform_real_distribution<double> dist(-bound, bound);
        for (auto &w : layer.weights) {
            w = dist(rng);
        }
        for (auto &b : layer.biases) {
            b = dist(rng);
        }
    }
    net.revision_ = next_revision();
    return net;
}

DenseNet DenseNet::random(std::vector<int> widths, Activation hidden, Activation output, std::mt19937_64 &rng) {
    const auto acts = default_activations(widths.size() - 1, hidden, output);
    return random(std::move(widths), acts, rng);
}

std::size_t DenseNet::param_count() const {
    std::size_t n = 0;
    for (const auto &layer : layers_) {
        n += layer.param_count();
    }
    return n;
}

std::vector<double> DenseNet::parameters() const {
    std::vector<double> out;
    out.reserve(param_count());
    for (const auto &layer : layers_) {
        out.insert(out.end(), layer.weights.begin(), layer.weights.end());
        out.insert(out.end(), layer.biases.begin(), layer.biases.end());
    }
    return out;
}

void DenseNet::set_parameters(std::span<const double> params) {
    if (params.size() != param_count()) {
        throw DimensionError("parameter vector length does not match the network");
    }
    std::size_t k = 0;
    for (auto &layer : layers_) {
        for (auto &w : layer.weights) {
            w = params[k++];
        }
        for (auto &b : layer.biases) {
            b = params[k++];
        }
    }
    revision_ = next_revision();
}

void DenseNet::set_layer(std::size_t index, std::vector<double> weights, std::vector<double> biases) {
    auto &layer = layers_.at(index);
    if (weights.size() != layer.weights.size() || biases.size() != layer.biases.size()) {
        throw DimensionError("layer parameter shapes do not match");
    }
    layer.weights = std::move(weights);
    layer.biases = std::move(biases);
    revision_ = next_revision();
}

ForwardResult DenseNet::forward(std::span<const double> x) const {
    if (x.size() != static_cast<std::size_t>(input_width())) {
        throw DimensionError("dense net expects " + std::to_string(input_width()) + " inputs, got " +
                             std::to_string(x.size()));
    }
    ForwardResult result;
    auto &tape = result.tape;
    tape.revision = revision_;
    std::vector<double> a(x.begin(), x.end());
    for (const auto &layer : layers_) {
        std::vector<double> z(layer.out);
        for (int o = 0; o < layer.out; ++o) {
            double acc = layer.biases[o];
            const double *row = layer.weights.data() + static_cast<std::size_t>(o) * layer.in;
            for (int i = 0; i < layer.in; ++i) {
                acc += row[i] * a[i];
            }
            z[o] = acc;
        }
        std::vector<double> next(layer.out);
        for (int o = 0; o < layer.out; ++o) {
            next[o] = activate(layer.activation, z[o]);
        }
        tape.inputs.push_back(std::move(a));
        tape.pre.push_back(std::move(z));
        a = std::move(next);
    }
    for (double v : a) {
        if (!std::isfinite(v)) {
            throw NumericalError("dense net produced a non-finite output");
        }
    }
    tape.output = a;
    result.y = std::move(a);
    return result;
}

BackwardResult DenseNet::backward(const GradientTape &tape, std::span<const double> upstream) const {
    if (tape.revision != revision_ || tape.inputs.size() != layers_.size()) {
        throw std::logic_error("gradient tape is stale: parameters changed since the forward pass");
    }
    if (upstream.size() != static_cast<std::size_t>(output_width())) {
        throw DimensionError("upstream gradient width does not match the network output");
    }
    BackwardResult result;
    result.param_grads.assign(param_count(), 0.0);

    // offsets of each layer's block in the flat parameter vector
    std::vector<std::size_t> offset(layers_.size());
    std::size_t k = 0;
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        offset[l] = k;
        k += layers_[l].param_count();
    }

    std::vector<double> delta(upstream.begin(), upstream.end());
    for (std::size_t l = layers_.size(); l-- > 0;) {
        const auto &layer = layers_[l];
        const auto &z = tape.pre[l];
        const auto &in = tape.inputs[l];
        for (int o = 0; o < layer.out; ++o) {
            delta[o] *= activate_grad(layer.activation, z[o]);
        }
        double *gw = result.param_grads.data() + offset[l];
        double *gb = gw + layer.weights.size();
        std::vector<double> below(layer.in, 0.0);
        for (int o = 0; o < layer.out; ++o) {
            const double d = delta[o];
            gb[o] = d;
            const double *row = layer.weights.data() + static_cast<std::size_t>(o) * layer.in;
            double *grow = gw + static_cast<std::size_t>(o) * layer.in;
            for (int i = 0; i < layer.in; ++i) {
                grow[i] = d * in[i];
                below[i] += d * row[i];
            }
        }
        delta = std::move(below);
    }
    result.input_grad = std::move(delta);
    return result;
}

std::size_t count_params(const DenseNet &net) { return net.param_count(); }

std::size_t count_params(std::span<const int> widths) {
    std::size_t n = 0;
    for (std::size_t l = 1; l < widths.size(); ++l) {
        n += static_cast<std::size_t>(widths[l - 1]) * widths[l] + widths[l];
    }
    return n;
}

} // namespace hqnn
