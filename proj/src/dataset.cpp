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

#include "hqnn/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include "hqnn/eval_metrics.hpp"

namespace hqnn {

std::string_view to_string(TargetFunction f) {
    return f == TargetFunction::DAMPED_SINC_1D ? "damped_sinc_1d" : "damped_sinc_2d";
}

TargetFunction target_function_from_string(std::string_view name) {
    if (name == "damped_sinc_1d") {
        return TargetFunction::DAMPED_SINC_1D;
    }
    if (name == "damped_sinc_2d") {
        return TargetFunction::DAMPED_SINC_2D;
    }
    throw std::invalid_argument("unknown target function '" + std::string(name) + "'");
}

double damped_sinc(double x) {
    const double u = 5.0 * x;
    if (u == 0.0) {
        return 1.0;
    }
    return std::sin(u) / u;
}

void DatasetSpec::validate() const {
    if (n_train < 1 || n_test < 0) {
        throw std::invalid_argument("dataset needs n_train >= 1 and n_test >= 0");
    }
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw std::invalid_argument("dataset interval must satisfy lo < hi");
    }
}

DatasetSplit make_dataset(const DatasetSpec &spec) {
    spec.validate();
    std::mt19937_64 rng(spec.seed);
    // u in [0, 1) maps to x = hi - (hi - lo) u in (lo, hi].
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int d = spec.input_dim();
    auto draw = [&] {
        Sample s;
        double y = 0.0;
        for (int k = 0; k < d; ++k) {
            double x = spec.hi - (spec.hi - spec.lo) * unit(rng);
            if (x <= spec.lo) {
                x = std::nextafter(spec.lo, spec.hi);
            }
            s.x.push_back(x);
            y += damped_sinc(x);
        }
        s.y = {y};
        return s;
    };
    DatasetSplit split;
    for (int i = 0; i < spec.n_train; ++i) {
        split.train.push_back(draw());
    }
    for (int i = 0; i < spec.n_test; ++i) {
        split.test.push_back(draw());
    }
    return split;
}

void write_dataset_csv(const std::filesystem::path &path, const Dataset &data) {
    if (data.empty()) {
        throw std::invalid_argument("write_dataset_csv: empty dataset");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    const std::size_t d = data.front().x.size();
    for (std::size_t k = 0; k < d; ++k) {
        out << 'x' << (k + 1) << ',';
    }
    out << "y\n";
    for (const auto &s : data) {
        if (s.x.size() != d || s.y.size() != 1) {
            throw DimensionError("write_dataset_csv: ragged rows");
        }
        for (double x : s.x) {
            out << format_double(x) << ',';
        }
        out << format_double(s.y[0]) << '\n';
    }
    if (!out) {
        throw std::runtime_error("failed writing " + path.string());
    }
}

Dataset read_dataset_csv(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error(path.string() + ": missing header");
    }
    const auto columns = static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
    if (columns < 2) {
        throw std::runtime_error(path.string() + ": need at least one feature and a target column");
    }
    Dataset data;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        std::vector<double> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            cells.push_back(parse_double(cell));
        }
        if (cells.size() != columns) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": expected " +
                                     std::to_string(columns) + " fields");
        }
        Sample s;
        s.y = {cells.back()};
        cells.pop_back();
        s.x = std::move(cells);
        data.push_back(std::move(s));
    }
    return data;
}

DatasetSplit split_dataset(Dataset rows, std::size_t n_train) {
    if (n_train == 0 || n_train > rows.size()) {
        throw std::invalid_argument("split_dataset: n_train must be in [1, rows]");
    }
    DatasetSplit split;
    split.test.assign(std::make_move_iterator(rows.begin() + static_cast<std::ptrdiff_t>(n_train)),
                      std::make_move_iterator(rows.end()));
    rows.resize(n_train);
    split.train = std::move(rows);
    return split;
}

} // namespace hqnn
