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

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "hqnn/gradcheck.hpp"
#include "hqnn/gradients.hpp"
#include "oracles.hpp"

using namespace hqnn;
using std::numbers::pi;

namespace {

double weighted(const ReuploadCircuit &c, std::span<const double> h, std::span<const double> up) {
    const auto e = qnn_forward(c, h).expectations;
    double acc = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        acc += e[i] * up[i];
    }
    return acc;
}

} // namespace

TEST_CASE("shift rule reproduces -sin(theta) exactly") {
    const std::vector<double> h{0.0};
    const std::vector<double> up{1.0};
    const auto z = single_z_observables(1);
    double worst = 0.0;
    for (double t = -3.0; t <= 3.0; t += 0.25) {
        // ROT(0, t, 0) is RY(t).
        const ReuploadCircuit c(1, 1, Embedding{}, {0.0, t, 0.0});
        const auto g = param_shift_grad(c, h, z, up);
        worst = std::max(worst, std::abs(g[1] + std::sin(t)));
    }
    CHECK(worst < 1e-10);
    const ReuploadCircuit c(1, 1, Embedding{}, {0.0, pi / 3, 0.0});
    CHECK(param_shift_grad(c, h, z, up)[1] == doctest::Approx(-0.86603).epsilon(1e-5));
}

TEST_CASE("rotation on an unmeasured, unentangled wire has zero gradient") {
    GateProgram prog(2);
    prog.add(Gate::ry(0, 0.7), {0, -1, -1});
    prog.add(Gate::rot(1, 0.3, 1.1, -0.2), {1, 2, 3});
    const std::vector<double> up{1.0};
    const auto g = theta_shift_gradient(prog, 4, pure_evaluator({Observable::z(2, 0)}), up);
    REQUIRE(g.size() == 4);
    CHECK(g[0] == doctest::Approx(-std::sin(0.7)).epsilon(1e-12));
    CHECK(std::abs(g[1]) < 1e-14);
    CHECK(std::abs(g[2]) < 1e-14);
    CHECK(std::abs(g[3]) < 1e-14);
}

TEST_CASE("theta gradients match finite differences") {
    std::mt19937_64 rng(6);
    const double step = 1e-5;
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2;
        const auto c = ReuploadCircuit::random_uniform(n, 2, Embedding{}, rng);
        const auto h = oracle::uniform_vector(rng, n, -pi, pi);
        const auto up = oracle::uniform_vector(rng, n, -1, 1);
        const auto obs = single_z_observables(n);
        const auto g = param_shift_grad(c, h, obs, up);
        std::vector<double> theta(c.theta().begin(), c.theta().end());
        for (std::size_t i = 0; i < theta.size(); ++i) {
            auto tp = theta, tm = theta;
            tp[i] += step;
            tm[i] -= step;
            const double fd = (weighted(c.with_theta(tp), h, up) - weighted(c.with_theta(tm), h, up)) / (2 * step);
            worst = std::max(worst, std::abs(g[i] - fd));
        }
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("input gradients sum over every upload") {
    const auto z = single_z_observables(1);
    const std::vector<double> up{1.0};
    for (double x : {-0.8, 0.3, 1.7}) {
        const std::vector<double> h{x};
        const auto one = input_shift_grad(ReuploadCircuit::zeros(1, 1), h, z, up);
        CHECK(one[0] == doctest::Approx(-std::sin(x)).epsilon(1e-12));
        const auto two = input_shift_grad(ReuploadCircuit::zeros(1, 2), h, z, up);
        CHECK(two[0] == doctest::Approx(-2 * std::sin(2 * x)).epsilon(1e-12));
        const std::vector<double> zero{0.0};
        CHECK(input_shift_grad(ReuploadCircuit::zeros(1, 2), h, z, zero)[0] == 0.0);
    }

    std::mt19937_64 rng(10);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 1 + trial % 3;
        const auto c = ReuploadCircuit::random_uniform(n, 3, Embedding{}, rng);
        const auto h = oracle::uniform_vector(rng, n, 0, 3);
        const auto u = oracle::uniform_vector(rng, n, -1, 1);
        const auto g = input_shift_grad(c, h, single_z_observables(n), u);
        for (int i = 0; i < n; ++i) {
            auto hp = h, hm = h;
            hp[i] += 1e-5;
            hm[i] -= 1e-5;
            worst = std::max(worst, std::abs(g[i] - (weighted(c, hp, u) - weighted(c, hm, u)) / 2e-5));
        }
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("amplitude input gradient falls back to finite differences") {
    std::mt19937_64 rng(13);
    const auto c = ReuploadCircuit::random_uniform(2, 2, Embedding{EmbeddingKind::AMPLITUDE}, rng);
    const std::vector<double> x{0.4, -0.3, 1.2, 0.1};
    const std::vector<double> up{1.0, -0.5};
    const auto obs = single_z_observables(2);
    const auto g = input_fd_gradient(c, x, pure_evaluator(obs), up);
    for (std::size_t i = 0; i < x.size(); ++i) {
        auto xp = x, xm = x;
        xp[i] += 1e-4;
        xm[i] -= 1e-4;
        CHECK(g[i] == doctest::Approx((weighted(c, xp, up) - weighted(c, xm, up)) / 2e-4).epsilon(1e-6));
    }
    CHECK_THROWS(input_shift_grad(c, x, obs, up));
}

TEST_CASE("end-to-end hybrid gradient audit") {
    std::mt19937_64 rng(99);
    double worst = 0.0;
    for (int m = 0; m < 15; ++m) {
        const int d = 1 + m % 3;
        const Model model = random_audit_model(rng, 3, 3, d);
        const auto batch = random_audit_batch(rng, d, 3);
        std::vector<const Sample *> ptrs;
        for (const auto &s : batch) {
            ptrs.push_back(&s);
        }
        worst = std::max(worst, finite_difference_audit(model, ptrs).max_rel_error);
    }
    CHECK(worst < 1e-5);
    CHECK(relative_error(1.0, 1.0) == 0.0);
    CHECK(relative_error(0.0, 1e-9) == doctest::Approx(1e-5));
}
