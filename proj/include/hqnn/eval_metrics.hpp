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
 * @file eval_metrics.hpp
 * @brief Regression metrics: MSE, MAE, RMSE, Pearson R, regression SD and
 * concordance index.
 *
 * Sums use pairwise summation. All functions take targets first.
 */

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace hqnn {

class MetricError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

double pairwise_sum(std::span<const double> values);

double mse(std::span<const double> y, std::span<const double> p);
double mae(std::span<const double> y, std::span<const double> p);
double rmse(std::span<const double> y, std::span<const double> p);
/// Throws MetricError when either argument has zero variance.
double pearson_r(std::span<const double> y, std::span<const double> p);

/// Least-squares fit y ~ a p + b, then sqrt(sum residual^2 / (N - 1)).
/// Needs N >= 3 and non-constant p.
double regression_sd(std::span<const double> y, std::span<const double> p);

/// (1/Z) sum over pairs with y_i > y_j of h(p_i - p_j), h = 1 / 0.5 / 0 for
/// positive / zero / negative. Pairs with tied targets are skipped.
double concordance_index(std::span<const double> y, std::span<const double> p);

struct MetricReport {
    double mse = 0.0;
    double mae = 0.0;
    double rmse = 0.0;
    double pearson_r = 0.0;
    double sd = 0.0;
    double ci = 0.0;
    std::size_t n = 0;

    bool operator==(const MetricReport &) const = default;

    static std::string csv_header();
    std::string csv_row() const;
    static MetricReport from_csv_row(const std::string &row);

    nlohmann::ordered_json to_json() const;
    static MetricReport from_json(const nlohmann::json &doc);
};

/// Every metric at once. Metrics that are undefined for the inputs (for
/// example R on constant predictions) are reported as NaN.
MetricReport evaluate(std::span<const double> y, std::span<const double> p);

/// Shortest decimal string that parses back to the same double; "nan",
/// "inf" and "-inf" for non-finite values.
std::string format_double(double value);
double parse_double(const std::string &text);

} // namespace hqnn
