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

#include "hqnn/eval_metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace hqnn {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_pair(std::span<const double> y, std::span<const double> p, std::size_t min_n, const char *what) {
    if (y.size() != p.size()) {
        throw MetricError(std::string(what) + ": targets and predictions differ in length");
    }
    if (y.size() < min_n) {
        throw MetricError(std::string(what) + ": need at least " + std::to_string(min_n) + " samples");
    }
}

double mean_of(std::span<const double> v) { return pairwise_sum(v) / static_cast<double>(v.size()); }

template <class F> double pairwise_map_sum(std::size_t n, F &&term) {
    std::vector<double> buf(n);
    for (std::size_t i = 0; i < n; ++i) {
        buf[i] = term(i);
    }
    return pairwise_sum(buf);
}

template <class F> double guarded(F &&f) {
    try {
        return f();
    } catch (const MetricError &) {
        return kNaN;
    }
}

// JSON has no NaN; store non-finite values as strings.
nlohmann::ordered_json json_number(double v) {
    if (std::isfinite(v)) {
        return v;
    }
    return format_double(v);
}

double json_to_double(const nlohmann::json &v) {
    if (v.is_string()) {
        return parse_double(v.get<std::string>());
    }
    return v.get<double>();
}

} // namespace

double pairwise_sum(std::span<const double> values) {
    constexpr std::size_t kBlock = 8;
    if (values.size() <= kBlock) {
        double acc = 0.0;
        for (double v : values) {
            acc += v;
        }
        return acc;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double mse(std::span<const double> y, std::span<const double> p) {
    check_pair(y, p, 1, "mse");
    return pairwise_map_sum(y.size(), [&](std::size_t i) { return (y[i] - p[i]) * (y[i] - p[i]); }) /
           static_cast<double>(y.size());
}

double mae(std::span<const double> y, std::span<const double> p) {
    check_pair(y, p, 1, "mae");
    return pairwise_map_sum(y.size(), [&](std::size_t i) { return std::abs(y[i] - p[i]); }) /
           static_cast<double>(y.size());
}

double rmse(std::span<const double> y, std::span<const double> p) { return std::sqrt(mse(y, p)); }

double pearson_r(std::span<const double> y, std::span<const double> p) {
    check_pair(y, p, 2, "pearson_r");
    const double my = mean_of(y);
    const double mp = mean_of(p);
    const double sxy = pairwise_map_sum(y.size(), [&](std::size_t i) { return (y[i] - my) * (p[i] - mp); });
    const double syy = pairwise_map_sum(y.size(), [&](std::size_t i) { return (y[i] - my) * (y[i] - my); });
    const double spp = pairwise_map_sum(y.size(), [&](std::size_t i) { return (p[i] - mp) * (p[i] - mp); });
    if (syy == 0.0 || spp == 0.0) {
        throw MetricError("pearson_r: zero variance");
    }
    return std::clamp(sxy / std::sqrt(syy * spp), -1.0, 1.0);
}

double regression_sd(std::span<const double> y, std::span<const double> p) {
    check_pair(y, p, 3, "regression_sd");
    const double my = mean_of(y);
    const double mp = mean_of(p);
    const double spp = pairwise_map_sum(y.size(), [&](std::size_t i) { return (p[i] - mp) * (p[i] - mp); });
    if (spp == 0.0) {
        throw MetricError("regression_sd: constant predictions leave the slope undefined");
    }
    const double spy = pairwise_map_sum(y.size(), [&](std::size_t i) { return (p[i] - mp) * (y[i] - my); });
    const double a = spy / spp;
    const double b = my - a * mp;
    const double ss = pairwise_map_sum(y.size(), [&](std::size_t i) {
        const double r = y[i] - (a * p[i] + b);
        return r * r;
    });
    return std::sqrt(ss / static_cast<double>(y.size() - 1));
}

double concordance_index(std::span<const double> y, std::span<const double> p) {
    check_pair(y, p, 2, "concordance_index");
    double score = 0.0;
    double pairs = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        for (std::size_t j = 0; j < y.size(); ++j) {
            if (!(y[i] > y[j])) {
                continue;
            }
            pairs += 1.0;
            const double d = p[i] - p[j];
            score += d > 0.0 ? 1.0 : (d == 0.0 ? 0.5 : 0.0);
        }
    }
    if (pairs == 0.0) {
        throw MetricError("concordance_index: all targets are equal");
    }
    return score / pairs;
}

MetricReport evaluate(std::span<const double> y, std::span<const double> p) {
    MetricReport r;
    r.n = y.size();
    r.mse = mse(y, p);
    r.mae = mae(y, p);
    r.rmse = std::sqrt(r.mse);
    r.pearson_r = guarded([&] { return pearson_r(y, p); });
    r.sd = guarded([&] { return regression_sd(y, p); });
    r.ci = guarded([&] { return concordance_index(y, p); });
    return r;
}

// ---------------------------------------------------------------------------
// Serialization

std::string format_double(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string &text) {
    if (text == "nan") {
        return kNaN;
    }
    if (text == "inf") {
        return std::numeric_limits<double>::infinity();
    }
    if (text == "-inf") {
        return -std::numeric_limits<double>::infinity();
    }
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw std::invalid_argument("not a number: '" + text + "'");
    }
    return value;
}

std::string MetricReport::csv_header() { return "mse,mae,rmse,pearson_r,sd,ci,n"; }

std::string MetricReport::csv_row() const {
    return format_double(mse) + ',' + format_double(mae) + ',' + format_double(rmse) + ',' +
           format_double(pearson_r) + ',' + format_double(sd) + ',' + format_double(ci) + ',' + std::to_string(n);
}

MetricReport MetricReport::from_csv_row(const std::string &row) {
    std::vector<std::string> cells;
    std::stringstream ss(row);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        cells.push_back(cell);
    }
    if (cells.size() != 7) {
        throw std::invalid_argument("metric row must have 7 fields");
    }
    MetricReport r;
    r.mse = parse_double(cells[0]);
    r.mae = parse_double(cells[1]);
    r.rmse = parse_double(cells[2]);
    r.pearson_r = parse_double(cells[3]);
    r.sd = parse_double(cells[4]);
    r.ci = parse_double(cells[5]);
    r.n = std::stoull(cells[6]);
    return r;
}

nlohmann::ordered_json MetricReport::to_json() const {
    nlohmann::ordered_json j;
    j["mse"] = json_number(mse);
    j["mae"] = json_number(mae);
    j["rmse"] = json_number(rmse);
    j["pearson_r"] = json_number(pearson_r);
    j["sd"] = json_number(sd);
    j["ci"] = json_number(ci);
    j["n"] = n;
    return j;
}

MetricReport MetricReport::from_json(const nlohmann::json &doc) {
    MetricReport r;
    r.mse = json_to_double(doc.at("mse"));
    r.mae = json_to_double(doc.at("mae"));
    r.rmse = json_to_double(doc.at("rmse"));
    r.pearson_r = json_to_double(doc.at("pearson_r"));
    r.sd = json_to_double(doc.at("sd"));
    r.ci = json_to_double(doc.at("ci"));
    r.n = doc.at("n").get<std::size_t>();
    return r;
}

} // namespace hqnn
