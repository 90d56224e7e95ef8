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

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace hqnn {

enum class Activation { RELU, TANH, SIGMOID, IDENTITY };

std::string_view to_string(Activation act);
Activation activation_from_string(std::string_view name);

struct DenseLayer {
    int in = 0;
    int out = 0;
    std::vector<double> weights; // out x in, row-major
    std::vector<double> biases;  // out
    Activation activation = Activation::IDENTITY;

    std::size_t param_count() const { return weights.size() + biases.size(); }
};

/// Activations cached by one forward pass. inputs[l] feeds layer l,
/// pre[l] is its affine output before the activation.
struct GradientTape {
    std::vector<std::vector<double>> inputs;
    std::vector<std::vector<double>> pre;
    std::vector<double> output;
    std::uint64_t revision = 0;
};

struct ForwardResult {
    std::vector<double> y;
    GradientTape tape;
};

struct BackwardResult {
    std::vector<double> input_grad;
    /// Same layout as DenseNet::parameters().
    std::vector<double> param_grads;
};

/**
 * Fully connected feed-forward network: y = act_L(W_L ... act_1(W_1 x + b_1) ... + b_L).
 *
 * Parameters flatten layer by layer as [W_l row-major, b_l].
 */
class DenseNet {
  public:
    /// Zero weights. widths = [d_in, d_1, ..., d_out]; one activation per layer.
    DenseNet(std::vector<int> widths, std::vector<Activation> activations);
    DenseNet(std::vector<int> widths, Activation hidden, Activation output);

    /// Weights and biases uniform in [-sqrt(1/d_in), sqrt(1/d_in)] per layer.
    static DenseNet random(std::vector<int> widths, std::vector<Activation> activations, std::mt19937_64 &rng);
    static DenseNet random(std::vector<int> widths, Activation hidden, Activation output, std::mt19937_64 &rng);

    const std::vector<int> &widths() const { return widths_; }
    int input_width() const { return widths_.front(); }
    int output_width() const { return widths_.back(); }
    const std::vector<DenseLayer> &layers() const { return layers_; }
    std::size_t param_count() const;

    std::vector<double> parameters() const;
    void set_parameters(std::span<const double> params);
    void set_layer(std::size_t index, std::vector<double> weights, std::vector<double> biases);

    /// Bumped on every parameter change; tapes record it.
    std::uint64_t revision() const { return revision_; }

    ForwardResult forward(std::span<const double> x) const;
    std::vector<double> predict(std::span<const double> x) const { return forward(x).y; }
    /// Reverse-mode gradients of dot(y, upstream) with respect to x and all parameters.
    BackwardResult backward(const GradientTape &tape, std::span<const double> upstream) const;

  private:
    std::vector<int> widths_;
    std::vector<DenseLayer> layers_;
    std::uint64_t revision_ = 1;
};

std::size_t count_params(const DenseNet &net);

/// Sum_l (d_{l-1} d_l + d_l) for a width list.
std::size_t count_params(std::span<const int> widths);

} // namespace hqnn
