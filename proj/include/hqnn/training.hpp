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
 * @file training.hpp
 * @brief Hybrid model composition, MSE loss, AdamW and the training loop.
 *
 * Quantum parameters are differentiated with the parameter-shift rule,
 * classical layers with reverse-mode backprop. The two meet at the circuit
 * input, where the shift rule is applied to every upload of each angle.
 */

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hqnn/circuit.hpp"
#include "hqnn/dense_net.hpp"
#include "hqnn/gradients.hpp"
#include "hqnn/noise.hpp"

namespace hqnn {

struct Sample {
    std::vector<double> x;
    std::vector<double> y;
};

using Dataset = std::vector<Sample>;

struct TrainConfig {
    double learning_rate = 0.005;
    double weight_decay = 0.01;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    int epochs = 20;
    int batch_size = 16;
    std::uint64_t seed = 0;
    int repeats = 5;
    /// Cosine decay from learning_rate to 0 over all steps. Off by default.
    bool cosine_schedule = false;

    void validate() const;
};

struct AdamState {
    std::vector<double> m;
    std::vector<double> v;
    long step = 0;
};

/// theta <- theta - lr (m_hat / (sqrt(v_hat) + eps) + lambda theta), with
/// bias-corrected moments. Increments state.step first, so the first call
/// uses t = 1.
void adamw_step(std::span<double> params, std::span<const double> grads, AdamState &state,
                const TrainConfig &config, double learning_rate);
inline void adamw_step(std::span<double> params, std::span<const double> grads, AdamState &state,
                       const TrainConfig &config) {
    adamw_step(params, grads, state, config, config.learning_rate);
}

double mse_loss(std::span<const double> pred, std::span<const double> target);
/// 2 (pred - target) / n.
std::vector<double> mse_grad(std::span<const double> pred, std::span<const double> target);

class TrainingDiverged : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/**
 * Classical embedding net -> data re-uploading circuit -> classical
 * regression net. Either net may be absent. Without a regression net the
 * model output is the single value sum_k <O_k>, a fixed readout.
 *
 * Flat parameter order: embedding net, theta, regression net.
 */
class HybridModel {
  public:
    HybridModel(std::optional<DenseNet> embed_net, ReuploadCircuit circuit, std::optional<DenseNet> regress_net,
                std::vector<Observable> measured = {});

    const std::optional<DenseNet> &embed_net() const { return embed_; }
    const ReuploadCircuit &circuit() const { return circuit_; }
    const std::optional<DenseNet> &regress_net() const { return regress_; }
    const std::vector<Observable> &measured() const { return measured_; }
    const NoiseModel &noise() const { return noise_; }

    /// Every forward and gradient evaluation uses this channel. NONE selects
    /// the pure-state backend.
    void set_noise(const NoiseModel &noise);

    std::size_t input_width() const;
    std::size_t output_width() const;
    std::size_t classical_param_count() const;
    std::size_t quantum_param_count() const { return circuit_.quantum_param_count(); }
    std::size_t param_count() const { return classical_param_count() + quantum_param_count(); }

    std::vector<double> parameters() const;
    void set_parameters(std::span<const double> params);

    /// Encoded circuit input h for x.
    std::vector<double> encode(std::span<const double> x) const;
    std::vector<double> predict(std::span<const double> x) const;

    /// Mean squared error over the batch and its gradient (accumulated into
    /// grad, which is resized to param_count()).
    double loss_and_gradient(std::span<const Sample *const> batch, std::vector<double> &grad) const;

  private:
    ProgramEvaluator evaluator() const;

    std::optional<DenseNet> embed_;
    ReuploadCircuit circuit_;
    std::optional<DenseNet> regress_;
    std::vector<Observable> measured_;
    NoiseModel noise_;
};

/// A plain DenseNet regressor with the same training surface.
class ClassicalModel {
  public:
    explicit ClassicalModel(DenseNet net) : net_(std::move(net)) {}

    const DenseNet &net() const { return net_; }
    std::size_t input_width() const { return net_.input_width(); }
    std::size_t output_width() const { return net_.output_width(); }
    std::size_t classical_param_count() const { return net_.param_count(); }
    std::size_t quantum_param_count() const { return 0; }
    std::size_t param_count() const { return net_.param_count(); }

    std::vector<double> parameters() const { return net_.parameters(); }
    void set_parameters(std::span<const double> params) { net_.set_parameters(params); }
    std::vector<double> predict(std::span<const double> x) const { return net_.predict(x); }
    double loss_and_gradient(std::span<const Sample *const> batch, std::vector<double> &grad) const;

  private:
    DenseNet net_;
};

template <class M>
concept TrainableModel = std::copy_constructible<M> && requires(M m, const M cm, std::span<const double> p,
                                                                std::span<const Sample *const> batch,
                                                                std::vector<double> &g) {
    { cm.parameters() } -> std::convertible_to<std::vector<double>>;
    m.set_parameters(p);
    { cm.predict(p) } -> std::convertible_to<std::vector<double>>;
    { cm.loss_and_gradient(batch, g) } -> std::convertible_to<double>;
};

/// Mean squared error of the model over a dataset.
template <TrainableModel M> double dataset_mse(const M &model, const Dataset &data) {
    if (data.empty()) {
        throw std::invalid_argument("dataset_mse: empty dataset");
    }
    double acc = 0.0;
    for (const auto &s : data) {
        acc += mse_loss(model.predict(s.x), s.y);
    }
    return acc / static_cast<double>(data.size());
}

struct EpochRecord {
    int epoch = 0;
    double train_mse = 0.0;
    /// NaN when no test set was given.
    double test_mse = std::numeric_limits<double>::quiet_NaN();
};

template <class M> struct TrainResult {
    /// Parameters from the epoch with the lowest training loss.
    M model;
    std::vector<EpochRecord> trace;
    int best_epoch = 0;
    double best_train_mse = std::numeric_limits<double>::infinity();
};

/**
 * Minibatch AdamW with per-epoch reshuffling. Each epoch ends with a full
 * pass over the training set; the snapshot with the lowest such loss is
 * returned. Deterministic for a fixed config.seed.
 */
template <TrainableModel M>
TrainResult<M> train(M model, const Dataset &train_set, const TrainConfig &config, const Dataset *test_set = nullptr) {
    config.validate();
    if (train_set.empty()) {
        throw std::invalid_argument("train: empty training set");
    }
    std::mt19937_64 rng(config.seed);
    std::vector<std::size_t> order(train_set.size());
    std::iota(order.begin(), order.end(), std::size_t{0});

    std::vector<double> params = model.parameters();
    AdamState adam;
    std::vector<double> grad;
    std::vector<const Sample *> batch;

    const std::size_t bs = static_cast<std::size_t>(config.batch_size);
    const long steps_per_epoch = static_cast<long>((train_set.size() + bs - 1) / bs);
    const long total_steps = steps_per_epoch * config.epochs;

    TrainResult<M> result{model, {}, 0, std::numeric_limits<double>::infinity()};
    for (int epoch = 1; epoch <= config.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t start = 0; start < order.size(); start += bs) {
            batch.clear();
            for (std::size_t i = start; i < std::min(order.size(), start + bs); ++i) {
                batch.push_back(&train_set[order[i]]);
            }
            const double loss = model.loss_and_gradient(batch, grad);
            if (!std::isfinite(loss)) {
                throw TrainingDiverged("training loss became non-finite at epoch " + std::to_string(epoch));
            }
            double lr = config.learning_rate;
            if (config.cosine_schedule) {
                lr *= 0.5 * (1.0 + std::cos(std::acos(-1.0) * static_cast<double>(adam.step) /
                                            static_cast<double>(total_steps)));
            }
            adamw_step(params, grad, adam, config, lr);
            model.set_parameters(params);
        }
        EpochRecord rec;
        rec.epoch = epoch;
        rec.train_mse = dataset_mse(model, train_set);
        if (!std::isfinite(rec.train_mse)) {
            throw TrainingDiverged("training loss became non-finite at epoch " + std::to_string(epoch));
        }
        if (test_set != nullptr && !test_set->empty()) {
            rec.test_mse = dataset_mse(model, *test_set);
        }
        if (rec.train_mse < result.best_train_mse) {
            result.best_train_mse = rec.train_mse;
            result.best_epoch = epoch;
            result.model = model;
        }
        result.trace.push_back(rec);
    }
    return result;
}

} // namespace hqnn
