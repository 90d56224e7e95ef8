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
#include <filesystem>
#include <string_view>

#include "hqnn/training.hpp"

namespace hqnn {

enum class TargetFunction { DAMPED_SINC_1D, DAMPED_SINC_2D };

std::string_view to_string(TargetFunction f);
TargetFunction target_function_from_string(std::string_view name);

/// sin(5x) / (5x); the removable singularity at 0 evaluates to 1.
double damped_sinc(double x);

struct DatasetSpec {
    TargetFunction function = TargetFunction::DAMPED_SINC_1D;
    int n_train = 200;
    int n_test = 100;
    /// Samples are drawn from the half-open interval (lo, hi].
    double lo = 0.0;
    double hi = 3.0;
    std::uint64_t seed = 0;

    int input_dim() const { return function == TargetFunction::DAMPED_SINC_1D ? 1 : 2; }
    void validate() const;
};

struct DatasetSplit {
    Dataset train;
    Dataset test;
};

/// Draws n_train + n_test points uniformly from (lo, hi]^d and splits them in
/// draw order. Deterministic given spec.seed.
DatasetSplit make_dataset(const DatasetSpec &spec);

/// CSV with a header; feature columns x1..xd then a single target column y.
void write_dataset_csv(const std::filesystem::path &path, const Dataset &data);
Dataset read_dataset_csv(const std::filesystem::path &path);

/// First n_train rows train, the rest test.
DatasetSplit split_dataset(Dataset rows, std::size_t n_train);

} // namespace hqnn
