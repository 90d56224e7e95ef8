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
#include <random>

#include "doctest.h"
#include "hqnn/eval_metrics.hpp"

using namespace hqnn;

namespace {

std::vector<double> random_vec(std::mt19937_64 &rng, std::size_t n) {
    std::normal_distribution<double> g;
    std::vector<double> v(n);
    for (auto &x : v) {
        x = g(rng);
    }
    return v;
}

} // namespace

TEST_CASE("regression SD") {
    const std::vector<double> y{0, 1, 2, 3.5};
    CHECK(regression_sd(y, y) == doctest::Approx(0.0));
    std::vector<double> affine(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        affine[i] = (y[i] - 3) / 2;
    }
    CHECK(regression_sd(y, affine) == doctest::Approx(0.0).epsilon(1e-12));
    // OLS by hand: a = 6.5 / 5, b = 1.75 - 1.3 * 1.5, residual SS = 0.3.
    CHECK(regression_sd(std::vector<double>{0, 1, 2, 4}, std::vector<double>{0, 1, 2, 3}) ==
          doctest::Approx(std::sqrt(0.3 / 3)).epsilon(1e-14));
    CHECK_THROWS_AS(regression_sd(std::vector<double>{1, 2}, std::vector<double>{1, 2}), MetricError);
    CHECK_THROWS_AS(regression_sd(y, std::vector<double>(4, 1.0)), MetricError);
}

TEST_CASE("concordance index") {
    const std::vector<double> y{1, 2, 3, 4, 5};
    CHECK(concordance_index(y, y) == 1.0);
    CHECK(concordance_index(y, std::vector<double>(5, 0.3)) == 0.5);
    CHECK(concordance_index(y, std::vector<double>{5, 4, 3, 2, 1}) == 0.0);
    // Two discordant pairs out of ten.
    CHECK(concordance_index(y, std::vector<double>{1, 3, 2, 5, 4}) == doctest::Approx(0.8));
    // Tied targets are not comparable pairs.
    CHECK(concordance_index(std::vector<double>{1, 1, 2}, std::vector<double>{0, 5, 1}) == doctest::Approx(0.5));
    CHECK_THROWS_AS(concordance_index(std::vector<double>{2, 2}, std::vector<double>{0, 1}), MetricError);
}

TEST_CASE("R, MAE and RMSE") {
    const std::vector<double> y{-1.0, 0.5, 0.5};
    CHECK(pearson_r(y, y) == doctest::Approx(1.0));
    CHECK(mae(y, y) == 0.0);
    CHECK(rmse(y, y) == 0.0);
    const std::vector<double> neg{1.0, -0.5, -0.5};
    CHECK(pearson_r(y, neg) == doctest::Approx(-1.0));
    const std::vector<double> a{1, 2, 3}, b{2, 2, 2};
    CHECK(mae(a, b) == doctest::Approx(2.0 / 3));
    CHECK(rmse(a, b) == doctest::Approx(std::sqrt(2.0 / 3)));
    CHECK(mse(a, b) == doctest::Approx(2.0 / 3));
    CHECK_THROWS_AS(pearson_r(a, b), MetricError);
    CHECK_THROWS_AS(mae(a, std::vector<double>{1}), MetricError);
}

TEST_CASE("metric properties on random data") {
    std::mt19937_64 rng(2026);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 3 + trial % 40;
        const auto y = random_vec(rng, n);
        const auto p = random_vec(rng, n);

        std::vector<double> mono(n), aff(n), affy(n);
        for (std::size_t i = 0; i < n; ++i) {
            mono[i] = std::exp(p[i]) + p[i] * p[i] * p[i];
            aff[i] = 2.5 * p[i] - 7.0;
            affy[i] = 0.1 * y[i] + 3.0;
        }
        CHECK(concordance_index(y, mono) == concordance_index(y, p));
        const double r = pearson_r(y, p);
        CHECK(r >= -1.0);
        CHECK(r <= 1.0);
        CHECK(pearson_r(y, aff) == doctest::Approx(r).epsilon(1e-12));
        CHECK(pearson_r(affy, p) == doctest::Approx(r).epsilon(1e-12));
        CHECK(regression_sd(y, aff) == doctest::Approx(regression_sd(y, p)).epsilon(1e-10));
        CHECK(rmse(y, p) * rmse(y, p) == doctest::Approx(mse(y, p)).epsilon(1e-14));
        const double ci = concordance_index(y, p);
        CHECK(ci >= 0.0);
        CHECK(ci <= 1.0);
    }
}

TEST_CASE("pairwise summation") {
    std::vector<double> v(1 << 20, 0.1);
    CHECK(std::abs(pairwise_sum(v) - 104857.6) < 1e-8);
    CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
}

TEST_CASE("report serialization round trip") {
    std::mt19937_64 rng(6);
    const auto y = random_vec(rng, 25);
    const auto p = random_vec(rng, 25);
    const MetricReport r = evaluate(y, p);
    CHECK(r.n == 25);
    CHECK(MetricReport::csv_header() == "mse,mae,rmse,pearson_r,sd,ci,n");
    CHECK(MetricReport::from_csv_row(r.csv_row()) == r);
    CHECK(MetricReport::from_json(nlohmann::json::parse(r.to_json().dump())) == r);

    // Undefined metrics become NaN and survive the trip as NaN.
    const MetricReport tiny = evaluate(std::vector<double>{1.0, 2.0}, std::vector<double>{1.5, 1.5});
    CHECK(std::isnan(tiny.pearson_r));
    CHECK(std::isnan(tiny.sd));
    const auto back = MetricReport::from_json(nlohmann::json::parse(tiny.to_json().dump()));
    CHECK(std::isnan(back.pearson_r));
    CHECK(back.mse == tiny.mse);
    const auto back_csv = MetricReport::from_csv_row(tiny.csv_row());
    CHECK(std::isnan(back_csv.sd));
    CHECK(back_csv.ci == tiny.ci);
}

TEST_CASE("number formatting is locale-free and round-trips") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(-2.5e-300) == "-2.5e-300");
    CHECK(format_double(std::nan("")) == "nan");
    CHECK(format_double(-INFINITY) == "-inf");
    std::mt19937_64 rng(7);
    for (double x : random_vec(rng, 200)) {
        const double v = x * std::pow(10.0, static_cast<int>(x * 20));
        CHECK(parse_double(format_double(v)) == v);
    }
    CHECK(std::isinf(parse_double("inf")));
    CHECK_THROWS(parse_double("1.0abc"));
    CHECK_THROWS(parse_double(""));
}

TEST_CASE("rmse dominates mae") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        const auto y = random_vec(rng, 2 + trial % 30);
        const auto p = random_vec(rng, y.size());
        CHECK(rmse(y, p) >= mae(y, p));
    }
    // Equal absolute residuals give equality.
    const std::vector<double> y{0, 1, 2}, p{0.5, 0.5, 2.5};
    CHECK(rmse(y, p) == doctest::Approx(mae(y, p)).epsilon(1e-15));
}
