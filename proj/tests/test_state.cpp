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
#include "hqnn/circuit.hpp"
#include "hqnn/state.hpp"
#include "oracles.hpp"

using namespace hqnn;
using std::numbers::pi;

namespace {

Gate random_gate(std::mt19937_64 &rng, int n) {
    std::uniform_int_distribution<int> kind(0, n > 1 ? 5 : 4);
    std::uniform_int_distribution<int> wire(0, n - 1);
    std::uniform_real_distribution<double> angle(-pi, pi);
    const int w = wire(rng);
    switch (kind(rng)) {
    case 0:
        return Gate::rx(w, angle(rng));
    case 1:
        return Gate::ry(w, angle(rng));
    case 2:
        return Gate::rz(w, angle(rng));
    case 3:
        return Gate::rot(w, angle(rng), angle(rng), angle(rng));
    case 4:
        return Gate::x(w);
    default: {
        int t = wire(rng);
        while (t == w) {
            t = wire(rng);
        }
        return Gate::cnot(w, t);
    }
    }
}

} // namespace

TEST_CASE("single gates on basis states") {
    StateVector s(1);
    s.apply(Gate::x(0));
    CHECK(std::abs(s[0]) == doctest::Approx(0.0));
    CHECK(std::abs(s[1] - cplx(1.0)) < 1e-15);

    StateVector psi = StateVector::from_amplitudes({cplx(0.6, 0.1), cplx(-0.2, std::sqrt(1 - 0.41))});
    const StateVector same = apply_gate(psi, Gate::ry(0, 0.0));
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(std::abs(same[i] - psi[i]) < 1e-15);
    }

    const StateVector half = apply_gate(StateVector(1), Gate::ry(0, pi / 2));
    CHECK(half[0].real() == doctest::Approx(0.70711).epsilon(1e-5));
    CHECK(half[1].real() == doctest::Approx(0.70711).epsilon(1e-5));
}

TEST_CASE("qubit 0 is the most significant bit") {
    StateVector s(3);
    s.apply(Gate::x(0));
    CHECK(std::abs(s[4] - cplx(1.0)) < 1e-15);
    s.apply(Gate::cnot(0, 2));
    CHECK(std::abs(s[5] - cplx(1.0)) < 1e-15);
}

TEST_CASE("rot_decompose matches the closed-form rotation") {
    const auto check_close = [](const Mat2 &m, const oracle::Dense &ref) {
        for (int i = 0; i < 4; ++i) {
            CHECK(std::abs(m[i] - ref.a[i]) < 1e-12);
        }
    };
    const auto product = [](double a, double b, double g) {
        const auto seq = rot_decompose(a, b, g);
        oracle::Dense acc = oracle::Dense::identity(2);
        for (const auto &gate : seq) {
            const Mat2 m = single_qubit_matrix(gate);
            acc = oracle::mul(oracle::m2(m[0], m[1], m[2], m[3]), acc);
        }
        return acc;
    };
    check_close(single_qubit_matrix(Gate::rot(0, 0, 0, 0)), oracle::Dense::identity(2));
    check_close(single_qubit_matrix(Gate::rot(0, 0, 0.7, 0)), oracle::ry(0.7));

    const auto seq = rot_decompose(pi / 2, pi / 3, pi / 4);
    REQUIRE(seq.size() == 3);
    CHECK(seq[0].kind == GateKind::RZ);
    CHECK(seq[1].kind == GateKind::RY);
    CHECK(seq[2].kind == GateKind::RZ);
    const auto composed = product(pi / 2, pi / 3, pi / 4);
    check_close(single_qubit_matrix(Gate::rot(0, pi / 2, pi / 3, pi / 4)), oracle::rot(pi / 2, pi / 3, pi / 4));
    CHECK(std::abs(composed(0, 0)) == doctest::Approx(std::cos(pi / 6)).epsilon(1e-12));
    for (int i = 0; i < 4; ++i) {
        CHECK(std::abs(composed.a[i] - oracle::rot(pi / 2, pi / 3, pi / 4).a[i]) < 1e-12);
    }
    CHECK(Gate::rot(0, 1, 2, 3).param_count() == 3);
}

TEST_CASE("expectation_z on pure and mixed states") {
    const Observable z = Observable::z(1, 0);
    CHECK(expectation_z(StateVector(1), z) == 1.0);
    CHECK(expectation_z(StateVector::basis(1, 1), z) == -1.0);
    for (double t : {0.3, 1.1, 2.5}) {
        CHECK(expectation_z(apply_gate(StateVector(1), Gate::ry(0, t)), z) == doctest::Approx(std::cos(t)).epsilon(1e-13));
    }
    CHECK(expectation_z(DensityMatrix(1), z) == 1.0);
    CHECK(std::abs(expectation_z(DensityMatrix::maximally_mixed(1), z)) < 1e-15);

    // Parity observable Z0 Z1 on a Bell state is +1.
    StateVector bell(2);
    bell.apply(Gate::ry(0, pi / 2)).apply(Gate::cnot(0, 1));
    CHECK(expectation_z(bell, Observable({true, true})) == doctest::Approx(1.0));
    CHECK(std::abs(expectation_z(bell, Observable::z(2, 1))) < 1e-12);
    CHECK_THROWS_AS(expectation_z(bell, Observable::z(3, 0)), DimensionError);
}

TEST_CASE("fidelity") {
    CHECK(fidelity(StateVector(1), StateVector(1)) == doctest::Approx(1.0));
    CHECK(fidelity(StateVector(1), StateVector::basis(1, 1)) == doctest::Approx(0.0));
    const StateVector plus = apply_gate(StateVector(1), Gate::ry(0, pi / 2));
    CHECK(fidelity(StateVector(1), plus) == doctest::Approx(0.5).epsilon(1e-12));

    std::mt19937_64 rng(3);
    StateVector a(3), b(3);
    for (int i = 0; i < 20; ++i) {
        a.apply(random_gate(rng, 3));
        b.apply(random_gate(rng, 3));
    }
    CHECK(fidelity(a, b) == doctest::Approx(fidelity(b, a)).epsilon(1e-14));
    CHECK(fidelity(a, a) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("partial_trace") {
    const DensityMatrix r0 = partial_trace(StateVector(2), 0);
    CHECK(std::abs(r0(0, 0) - cplx(1.0)) < 1e-15);
    CHECK(std::abs(r0(1, 1)) < 1e-15);

    StateVector bell(2);
    bell.apply(Gate::ry(0, pi / 2)).apply(Gate::cnot(0, 1));
    const DensityMatrix rb = partial_trace(bell, 0);
    CHECK(std::abs(rb(0, 0) - cplx(0.5)) < 1e-12);
    CHECK(std::abs(rb(1, 1) - cplx(0.5)) < 1e-12);
    CHECK(std::abs(rb(0, 1)) < 1e-12);
    CHECK(rb.purity() == doctest::Approx(0.5));

    StateVector prod(2);
    prod.apply(Gate::ry(0, pi / 2));
    const DensityMatrix r1 = partial_trace(prod, 1);
    CHECK(std::abs(r1(0, 0) - cplx(1.0)) < 1e-12);
    CHECK(std::abs(r1(0, 1)) < 1e-12);

    std::mt19937_64 rng(11);
    StateVector s(4);
    for (int i = 0; i < 40; ++i) {
        s.apply(random_gate(rng, 4));
    }
    for (int w = 0; w < 4; ++w) {
        const DensityMatrix r = partial_trace(s, w);
        CHECK(std::abs(r.trace() - cplx(1.0)) < 1e-12);
        CHECK(r.hermiticity_error() < 1e-12);
        const DensityMatrix rd = partial_trace(DensityMatrix(s), w);
        for (std::size_t k = 0; k < 4; ++k) {
            CHECK(std::abs(rd.entries()[k] - r.entries()[k]) < 1e-12);
        }
    }
    CHECK_THROWS_AS(partial_trace(s, 4), DimensionError);
}

TEST_CASE("norm preservation over random gate sequences") {
    std::mt19937_64 rng(7);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + trial % 6;
        StateVector s(n);
        for (int g = 0; g < 200; ++g) {
            s.apply(random_gate(rng, n));
        }
        worst = std::max(worst, std::abs(s.norm_squared() - 1.0));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("statevector and density matrix agree on noiseless circuits") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + trial % 4;
        StateVector s(n);
        DensityMatrix rho(n);
        std::vector<cplx> ref = oracle::zero_state(n);
        for (int g = 0; g < 30; ++g) {
            const Gate gate = random_gate(rng, n);
            s.apply(gate);
            rho.apply(gate);
            const auto full = full_register_matrix(gate, n);
            oracle::Dense m(std::size_t{1} << n);
            m.a = full;
            ref = oracle::apply(m, ref);
        }
        for (int w = 0; w < n; ++w) {
            const Observable z = Observable::z(n, w);
            CHECK(std::abs(expectation_z(s, z) - expectation_z(rho, z)) < 1e-10);
            CHECK(std::abs(expectation_z(s, z) - oracle::z_expect(ref, w, n)) < 1e-10);
        }
        CHECK(std::abs(rho.purity() - 1.0) < 1e-10);
    }
}

TEST_CASE("invalid inputs are rejected") {
    CHECK_THROWS_AS(StateVector(0), DimensionError);
    CHECK_THROWS_AS(StateVector::from_amplitudes({1.0, 0.0, 0.0}), DimensionError);
    CHECK_THROWS_AS(StateVector::from_amplitudes({1.0, 1.0}), NumericalError);
    StateVector s(2);
    CHECK_THROWS_AS(s.apply(Gate::cnot(1, 1)), DimensionError);
    CHECK_THROWS_AS(s.apply(Gate::x(2)), DimensionError);
    CHECK_THROWS_AS(s.apply(Gate::ry(0, std::nan(""))), NumericalError);
}

TEST_CASE("realized gate matrices are unitary") {
    std::mt19937_64 rng(19);
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
        const Gate g = random_gate(rng, 2);
        oracle::Dense m(g.arity() == 2 ? 4 : 2);
        m.a = gate_matrix(g);
        worst = std::max(worst, oracle::max_unitarity_error(m));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("rot_decompose over random angle triples") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-2 * pi, 2 * pi);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double a = u(rng), b = u(rng), g = u(rng);
        oracle::Dense acc = oracle::Dense::identity(2);
        for (const auto &gate : rot_decompose(a, b, g)) {
            const Mat2 m = single_qubit_matrix(gate);
            acc = oracle::mul(oracle::m2(m[0], m[1], m[2], m[3]), acc);
        }
        const auto ref = oracle::rot(a, b, g);
        for (int k = 0; k < 4; ++k) {
            worst = std::max(worst, std::abs(acc.a[k] - ref.a[k]));
        }
    }
    CHECK(worst < 1e-12);
}
