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
 * @file harness.hpp
 * @brief Experiment specs, model construction with parameter audit, seeded
 * multi-run experiments, sweeps and on-disk results.
 *
 * Output layout under output_dir:
 *     run-<seed>/trace.csv      epoch,train_mse,test_mse
 *     run-<seed>/summary.json   config echo, seeds, counts, metrics
 *     aggregate.json            mean and std over successful runs
 *     sweep.csv                 one row per sweep cell
 */

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hqnn/circuit_metrics.hpp"
#include "hqnn/dataset.hpp"
#include "hqnn/eval_metrics.hpp"
#include "hqnn/noise.hpp"
#include "hqnn/training.hpp"
#include "json.hpp"

namespace hqnn {

enum class Task { UNIVARIATE, MULTIVARIATE, CUSTOM_CSV };
enum class ModelKind { NN, QNN, HQNN, HQNN_NO_CIN };

std::string_view to_string(Task task);
Task task_from_string(std::string_view name);
std::string_view to_string(ModelKind kind);
ModelKind model_kind_from_string(std::string_view name);

/// Training protocol used for the function-approximation experiments:
/// AdamW at lr 0.005 and weight decay 0.01 for 20 epochs, one sample per
/// step.
TrainConfig approx_train_config();

struct ExperimentSpec {
    Task task = Task::UNIVARIATE;
    ModelKind model = ModelKind::HQNN;
    int n_qubits = 1;
    /// Re-uploading layers for quantum models, dense layers for NN.
    int n_layers = 5;
    Embedding embedding;
    int range = 1;
    /// Hidden width of the NN baseline.
    int nn_width = 2;
    Activation embed_activation = Activation::IDENTITY;
    /// Applied when evaluating; training stays noiseless unless
    /// train_under_noise is set.
    NoiseModel noise;
    bool train_under_noise = false;
    TrainConfig train = approx_train_config();
    /// Dataset seed. Run r trains with seed train.seed + r.
    std::uint64_t data_seed = 0;
    std::filesystem::path output_dir;
    /// CUSTOM_CSV input and its train row count.
    std::filesystem::path csv_path;
    int csv_train_rows = 0;

    void validate() const;
    int input_dim() const;
    nlohmann::ordered_json to_json() const;
    static ExperimentSpec from_json(const nlohmann::json &doc);
};

struct ComplexityReport {
    int n_qubits = 0;
    int n_layers = 0;
    std::size_t classical_param_count = 0;
    std::size_t quantum_param_count = 0;
    std::int64_t u4_gate_count = 0;
    std::int64_t circuit_depth = 0;
    std::string circuit_depth_expression;

    nlohmann::ordered_json to_json() const;
};

/// Exact counts from closed-form formulas; never inspects a built model.
ComplexityReport complexity_report(const ExperimentSpec &spec);

/// Widths of the NN baseline: [d, w x (L - 1), 1].
std::vector<int> nn_widths(int input_dim, int width, int n_layers);

using Model = std::variant<ClassicalModel, HybridModel>;

std::size_t classical_param_count(const Model &model);
std::size_t quantum_param_count(const Model &model);

class ParameterAuditError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// Builds and initializes the model for spec, then checks its realized
/// parameter counts against complexity_report. Throws ParameterAuditError
/// on disagreement and std::invalid_argument on incompatible specs.
Model build_model(const ExperimentSpec &spec, std::mt19937_64 &rng);

DatasetSplit load_experiment_data(const ExperimentSpec &spec);

std::vector<double> predict(const Model &model, std::span<const double> x);
/// Test metrics for the model, optionally under a noise model.
MetricReport evaluate_model(const Model &model, const Dataset &data, const NoiseModel &noise = {});

struct RunResult {
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;
    int best_epoch = 0;
    std::vector<EpochRecord> trace;
    MetricReport train_metrics;
    MetricReport test_metrics;
    std::size_t classical_params = 0;
    std::size_t quantum_params = 0;
    /// The best-loss model of a successful run.
    std::optional<Model> model;
};

struct AggregateResult {
    std::vector<RunResult> runs;
    MetricReport mean;
    MetricReport std;
    int n_ok = 0;
    int n_failed = 0;

    nlohmann::ordered_json to_json(const ExperimentSpec &spec) const;
};

/// One seeded run: build, train, evaluate. Never throws for training
/// failures; they come back with ok = false.
RunResult run_single(const ExperimentSpec &spec, const DatasetSplit &data, int run_index);

/// All spec.train.repeats runs, up to jobs at a time. Writes the output
/// layout when spec.output_dir is non-empty.
AggregateResult run_experiment(const ExperimentSpec &spec, int jobs = 1);

/// Mean and sample std (n - 1) of each metric across reports.
std::pair<MetricReport, MetricReport> mean_and_std(const std::vector<MetricReport> &reports);

// ---------------------------------------------------------------------------
// Files

nlohmann::ordered_json run_summary_json(const ExperimentSpec &spec, const RunResult &run);
void write_run_files(const std::filesystem::path &run_dir, const ExperimentSpec &spec, const RunResult &run);
std::string run_dir_name(std::uint64_t seed);

void write_trace_csv(const std::filesystem::path &path, const std::vector<EpochRecord> &trace);
std::vector<EpochRecord> read_trace_csv(const std::filesystem::path &path);

struct RunSummary {
    std::uint64_t seed = 0;
    bool ok = false;
    MetricReport train_metrics;
    MetricReport test_metrics;
};
RunSummary read_run_summary(const std::filesystem::path &path);

void write_text_file(const std::filesystem::path &path, const std::string &text);
std::string read_text_file(const std::filesystem::path &path);

// ---------------------------------------------------------------------------
// Sweeps

/// A rectangular CSV table; cells are already formatted.
struct SweepTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string to_csv() const;
    static SweepTable from_csv(const std::string &text);
};

/// Expressibility and/or entangling capability of pqc_family over the grid.
/// Columns: qubits,layers,metric,mean,std,sample_std,n_samples,n_bins,seed.
SweepTable metrics_sweep(const std::vector<int> &qubits, const std::vector<int> &layers, const SamplingPlan &plan,
                         bool entangling, bool expressibility, int jobs = 1);

/// Trains each repeat noiselessly, then evaluates test MSE under every
/// (channel, rate). Columns: channel,rate,seed,test_mse,status.
SweepTable noise_sweep(const ExperimentSpec &spec, const std::vector<NoiseChannel> &channels,
                       const std::vector<double> &rates, int jobs = 1);

/// Runs spec for every (embedding, layers) cell. Columns:
/// embedding,qubits,layers,classical_params,quantum_params,mean_test_mse,std_test_mse,n_failed.
SweepTable embedding_sweep(const ExperimentSpec &spec, const std::vector<EmbeddingKind> &embeddings,
                           const std::vector<int> &layers, int jobs = 1);

/// Runs fn(i) for i in [0, n) on up to jobs threads. The first exception is
/// rethrown after all workers finish.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)> &fn);

} // namespace hqnn
