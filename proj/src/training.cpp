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

#include "hqnn/training.hpp"

namespace hqnn {

void TrainConfig::validate() const {
    if (!(learning_rate > 0.0) || !(weight_decay >= 0.0) || !(epsilon > 0.0)) {
        throw std::invalid_argument("learning rate and epsilon must be positive, weight decay non-negative");
    }
    if (!(beta1 > 0.0 && beta1 < 1.0) || !(beta2 > 0.0 && beta2 < 1.0)) {
        throw std::invalid_argument("AdamW betas must lie in (0, 1)");
    }
    if (epochs < 1 || batch_size < 1 || repeats < 1) {
        throw std::invalid_argument("epochs, batch size and repeats must be positive");
    }
}

void adamw_step(std::span<double> params, std::span<const double> grads, AdamState &state,
                const TrainConfig &config, double learning_rate) {
    if (grads.size() != params.size()) {
        throw DimensionError("adamw_step: gradient and parameter sizes differ");
    }
    if (state.m.size() != params.size()) {
        state.m.assign(params.size(), 0.0);
        state.v.assign(params.size(), 0.0);
        state.step = 0;
    }
    ++state.step;
    const double t = static_cast<double>(state.step);
    const double c1 = 1.0 - std::pow(config.beta1, t);
    const double c2 = 1.0 - std::pow(config.beta2, t);
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double g = grads[i];
        state.m[i] = config.beta1 * state.m[i] + (1.0 - config.beta1) * g;
        state.v[i] = config.beta2 * state.v[i] + (1.0 - config.beta2) * g * g;
        const double m_hat = state.m[i] / c1;
        const double v_hat = state.v[i] / c2;
        params[i] -= learning_rate * (m_hat / (std::sqrt(v_hat) + config.epsilon) + config.weight_decay * params[i]);
    }
}

double mse_loss(std::span<const double> pred, std::span<const double> target) {
    if (pred.empty() || pred.size() != target.size()) {
        throw DimensionError("mse_loss: inputs must be non-empty and of equal length");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const double r = pred[i] - target[i];
        acc += r * r;
    }
    return acc / static_cast<double>(pred.size());
}

std::vector<double> mse_grad(std::span<const double> pred, std::span<const double> target) {
    if (pred.empty() || pred.size() != target.size()) {
        throw DimensionError("mse_grad: inputs must be non-empty and of equal length");
    }
    std::vector<double> g(pred.size());
    const double scale = 2.0 / static_cast<double>(pred.size());
    for (std::size_t i = 0; i < pred.size(); ++i) {
        g[i] = scale * (pred[i] - target[i]);
    }
    return g;
}

// ---------------------------------------------------------------------------
// HybridModel

HybridModel::HybridModel(std::optional<DenseNet> embed_net, ReuploadCircuit circuit,
                         std::optional<DenseNet> regress_net, std::vector<Observable> measured)
    : embed_(std::move(embed_net)), circuit_(std::move(circuit)), regress_(std::move(regress_net)),
      measured_(std::move(measured)) {
    if (measured_.empty()) {
        measured_ = single_z_observables(circuit_.n_qubits());
    }
    if (measured_.size() > static_cast<std::size_t>(circuit_.n_qubits())) {
        throw DimensionError("at most n_qubits observables can be measured");
    }
    for (const auto &obs : measured_) {
        if (obs.n_qubits() != circuit_.n_qubits()) {
            throw DimensionError("observable width does not match the circuit");
        }
    }
    if (embed_) {
        const auto out = static_cast<std::size_t>(embed_->output_width());
        const bool ok = circuit_.embedding().kind == EmbeddingKind::ANGLE
                            ? out == static_cast<std::size_t>(circuit_.n_qubits())
                            : out <= circuit_.max_input_width();
        if (!ok) {
            throw DimensionError("embedding net output width does not fit the circuit input");
        }
    }
    if (regress_ && static_cast<std::size_t>(regress_->input_width()) != measured_.size()) {
        throw DimensionError("regression net input width must equal the number of measured observables");
    }
}

void HybridModel::set_noise(const NoiseModel &noise) {
    noise.validate();
    if (!noise.is_noiseless() && circuit_.n_qubits() > kMaxNoisyQubits) {
        throw DimensionError("noisy simulation is limited to " + std::to_string(kMaxNoisyQubits) + " qubits");
    }
    noise_ = noise;
}

std::size_t HybridModel::input_width() const {
    if (embed_) {
        return static_cast<std::size_t>(embed_->input_width());
    }
    return circuit_.embedding().kind == EmbeddingKind::ANGLE ? static_cast<std::size_t>(circuit_.n_qubits())
                                                               : circuit_.max_input_width();
}

std::size_t HybridModel::output_width() const {
    return regress_ ? static_cast<std::size_t>(regress_->output_width()) : 1;
}

std::size_t HybridModel::classical_param_count() const {
    return (embed_ ? embed_->param_count() : 0) + (regress_ ? regress_->param_count() : 0);
}

std::vector<double> HybridModel::parameters() const {
    std::vector<double> out;
    out.reserve(param_count());
    if (embed_) {
        const auto p = embed_->parameters();
        out.insert(out.end(), p.begin(), p.end());
    }
    out.insert(out.end(), circuit_.theta().begin(), circuit_.theta().end());
    if (regress_) {
        const auto p = regress_->parameters();
        out.insert(out.end(), p.begin(), p.end());
    }
    return out;
}

void HybridModel::set_parameters(std::span<const double> params) {
    if (params.size() != param_count()) {
        throw DimensionError("parameter vector length does not match the model");
    }
    std::size_t k = 0;
    if (embed_) {
        embed_->set_parameters(params.subspan(k, embed_->param_count()));
        k += embed_->param_count();
    }
    const auto theta = params.subspan(k, circuit_.quantum_param_count());
    circuit_ = circuit_.with_theta({theta.begin(), theta.end()});
    k += theta.size();
    if (regress_) {
        regress_->set_parameters(params.subspan(k, regress_->param_count()));
    }
}

ProgramEvaluator HybridModel::evaluator() const {
    if (noise_.is_noiseless()) {
        return pure_evaluator(measured_);
    }
    return noisy_evaluator(measured_, noise_);
}

std::vector<double> HybridModel::encode(std::span<const double> x) const {
    if (embed_) {
        return embed_->predict(x);
    }
    return {x.begin(), x.end()};
}

std::vector<double> HybridModel::predict(std::span<const double> x) const {
    const auto h = encode(x);
    const auto q = evaluator()(circuit_.compile(h), nullptr);
    if (regress_) {
        return regress_->predict(q);
    }
    return {std::accumulate(q.begin(), q.end(), 0.0)};
}

double HybridModel::loss_and_gradient(std::span<const Sample *const> batch, std::vector<double> &grad) const {
    if (batch.empty()) {
        throw std::invalid_argument("loss_and_gradient: empty batch");
    }
    grad.assign(param_count(), 0.0);
    const std::size_t n_embed = embed_ ? embed_->param_count() : 0;
    const std::size_t n_theta = circuit_.quantum_param_count();
    const std::size_t regress_offset = n_embed + n_theta;
    const auto evaluate = evaluator();
    const double inv_batch = 1.0 / static_cast<double>(batch.size());

    double loss = 0.0;
    for (const Sample *sample : batch) {
        std::optional<ForwardResult> embed_pass;
        std::vector<double> h;
        if (embed_) {
            embed_pass = embed_->forward(sample->x);
            h = embed_pass->y;
        } else {
            h.assign(sample->x.begin(), sample->x.end());
        }
        const GateProgram program = circuit_.compile(h);
        const auto q = evaluate(program, nullptr);

        std::vector<double> y;
        std::optional<ForwardResult> regress_pass;
        if (regress_) {
            regress_pass = regress_->forward(q);
            y = regress_pass->y;
        } else {
            y = {std::accumulate(q.begin(), q.end(), 0.0)};
        }
        loss += mse_loss(y, sample->y) * inv_batch;
        auto dy = mse_grad(y, sample->y);
        for (auto &v : dy) {
            v *= inv_batch;
        }

        std::vector<double> dq;
        if (regress_) {
            auto back = regress_->backward(regress_pass->tape, dy);
            for (std::size_t i = 0; i < back.param_grads.size(); ++i) {
                grad[regress_offset + i] += back.param_grads[i];
            }
            dq = std::move(back.input_grad);
        } else {
            dq.assign(q.size(), dy[0]);
        }

        const auto dtheta = theta_shift_gradient(program, n_theta, evaluate, dq);
        for (std::size_t i = 0; i < n_theta; ++i) {
            grad[n_embed + i] += dtheta[i];
        }

        if (embed_) {
            const auto dh = circuit_.embedding().kind == EmbeddingKind::ANGLE
                                ? input_shift_gradient(program, h.size(), evaluate, dq)
                                : input_fd_gradient(circuit_, h, evaluate, dq);
            const auto back = embed_->backward(embed_pass->tape, dh);
            for (std::size_t i = 0; i < n_embed; ++i) {
                grad[i] += back.param_grads[i];
            }
        }
    }
    return loss;
}

double ClassicalModel::loss_and_gradient(std::span<const Sample *const> batch, std::vector<double> &grad) const {
    if (batch.empty()) {
        throw std::invalid_argument("loss_and_gradient: empty batch");
    }
    grad.assign(param_count(), 0.0);
    const double inv_batch = 1.0 / static_cast<double>(batch.size());
    double loss = 0.0;
    for (const Sample *sample : batch) {
        const auto pass = net_.forward(sample->x);
        loss += mse_loss(pass.y, sample->y) * inv_batch;
        auto dy = mse_grad(pass.y, sample->y);
        for (auto &v : dy) {
            v *= inv_batch;
        }
        const auto back = net_.backward(pass.tape, dy);
        for (std::size_t i = 0; i < grad.size(); ++i) {
            grad[i] += back.param_grads[i];
        }
    }
    return loss;
}

} // namespace hqnn
