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

// Command-line front end for the hqnn experiments.
//
//   hqnn approx    train NN / QNN / HQNN models on a regression task
//   hqnn analyze   entangling capability and expressibility sweeps
//   hqnn noise     evaluate trained models under noise channels
//   hqnn report    closed-form parameter, gate and depth counts
//   hqnn gradcheck finite-difference audit of hybrid gradients
//   hqnn dataset   write the train/test split as CSV
//
// Every flag can also be set from an INI file passed with --config, using one
// section per subcommand ([approx], [noise], ...). Flags win over the file.

#include <cstdio>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hqnn/gradcheck.hpp"
#include "hqnn/harness.hpp"

using namespace hqnn;

namespace {

struct SpecFlags {
    std::string task = "univariate";
    std::string model = "hqnn";
    std::string embedding = "angle";
    std::string embed_activation = "identity";
    std::string channel = "none";
    std::string insertion = "after_each_gate";
    std::string csv_path;
    ExperimentSpec spec;
};

void add_spec_options(CLI::App *cmd, SpecFlags &f) {
    auto &s = f.spec;
    cmd->add_option("--task", f.task, "univariate | multivariate | custom_csv")->capture_default_str();
    cmd->add_option("--model", f.model, "nn | qnn | hqnn | hqnn_no_cin")->capture_default_str();
    cmd->add_option("--qubits", s.n_qubits, "Qubit count")->capture_default_str();
    cmd->add_option("--layers", s.n_layers, "Re-uploading layers (dense layers for nn)")->capture_default_str();
    cmd->add_option("--embedding", f.embedding, "angle | amplitude")->capture_default_str();
    cmd->add_option("--range", s.range, "CNOT range of the entangling layer")->capture_default_str();
    cmd->add_option("--nn-width", s.nn_width, "Hidden width of the nn baseline")->capture_default_str();
    cmd->add_option("--embed-activation", f.embed_activation, "relu | tanh | sigmoid | identity")
        ->capture_default_str();
    cmd->add_option("--channel", f.channel, "none | depolarizing | amplitude_damping")->capture_default_str();
    cmd->add_option("--rate", s.noise.rate, "Noise rate in [0, 1]")->capture_default_str();
    cmd->add_option("--insertion", f.insertion, "after_each_gate | after_each_layer")->capture_default_str();
    cmd->add_flag("--train-under-noise", s.train_under_noise, "Train on the noisy backend too");
    cmd->add_option("--lr", s.train.learning_rate, "AdamW learning rate")->capture_default_str();
    cmd->add_option("--weight-decay", s.train.weight_decay, "AdamW weight decay")->capture_default_str();
    cmd->add_option("--epochs", s.train.epochs, "Training epochs")->capture_default_str();
    cmd->add_option("--batch-size", s.train.batch_size, "Minibatch size")->capture_default_str();
    cmd->add_flag("--cosine", s.train.cosine_schedule, "Cosine learning-rate decay");
    cmd->add_option("--seed", s.train.seed, "Seed of run 0; run r uses seed + r")->capture_default_str();
    cmd->add_option("--data-seed", s.data_seed, "Dataset seed")->capture_default_str();
    cmd->add_option("--repeats", s.train.repeats, "Independent runs")->capture_default_str();
    cmd->add_option("--csv", f.csv_path, "Dataset CSV for --task custom_csv");
    cmd->add_option("--csv-train-rows", s.csv_train_rows, "Leading CSV rows used for training");
}

ExperimentSpec resolve(SpecFlags &f, const std::string &output_dir) {
    ExperimentSpec s = f.spec;
    s.task = task_from_string(f.task);
    s.model = model_kind_from_string(f.model);
    s.embedding.kind = embedding_kind_from_string(f.embedding);
    s.embed_activation = activation_from_string(f.embed_activation);
    s.noise.channel = noise_channel_from_string(f.channel);
    s.noise.insertion = noise_insertion_from_string(f.insertion);
    s.csv_path = f.csv_path;
    s.output_dir = output_dir;
    s.validate();
    return s;
}

std::vector<std::string> split_list(const std::string &text) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(text);
    while (std::getline(ss, cell, ',')) {
        if (!cell.empty()) {
            out.push_back(cell);
        }
    }
    return out;
}

void print_aggregate(const AggregateResult &agg) {
    std::printf("runs: %d ok, %d failed\n", agg.n_ok, agg.n_failed);
    for (const auto &r : agg.runs) {
        if (r.ok) {
            std::printf("  seed %llu  best epoch %2d  test mse %.6f\n", static_cast<unsigned long long>(r.seed),
                        r.best_epoch, r.test_metrics.mse);
        } else {
            std::printf("  seed %llu  FAILED: %s\n", static_cast<unsigned long long>(r.seed), r.error.c_str());
        }
    }
    std::printf("test mse %.6f +- %.6f\n", agg.mean.mse, agg.std.mse);
}

void emit_table(const SweepTable &table, const std::string &output_dir) {
    const std::string csv = table.to_csv();
    if (output_dir.empty()) {
        std::cout << csv;
    } else {
        write_text_file(std::filesystem::path(output_dir) / "sweep.csv", csv);
        std::printf("wrote %zu rows to %s/sweep.csv\n", table.rows.size(), output_dir.c_str());
    }
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Hybrid quantum-classical regression experiments"};
    app.set_config("--config", "", "INI file with one section per subcommand");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.require_subcommand(1);
    bool print_config = false;
    app.add_flag("--print-config", print_config, "Print the effective configuration as INI and exit")
        ->configurable(false);

    int jobs = 1;
    std::string output_dir;
    auto add_common = [&](CLI::App *cmd) {
        cmd->add_option("--jobs", jobs, "Concurrent runs")->capture_default_str();
        cmd->add_option("--output-dir", output_dir, "Directory for CSV/JSON results");
    };

    // approx
    SpecFlags approx_flags;
    std::string sweep_embeddings;
    std::string sweep_layers;
    auto *approx = app.add_subcommand("approx", "Train and evaluate a model on a regression task");
    add_spec_options(approx, approx_flags);
    add_common(approx);
    approx->add_option("--sweep-embeddings", sweep_embeddings, "Comma list; runs an embedding x layers sweep");
    approx->add_option("--sweep-layers", sweep_layers, "Comma list of layer counts for the embedding sweep");

    // analyze
    std::string an_qubits = "2,4,7,9";
    std::string an_layers = "1,5,10,15,20";
    std::string an_metric = "both";
    SamplingPlan plan;
    auto *analyze = app.add_subcommand("analyze", "Entangling capability / expressibility of the PQC block");
    analyze->add_option("--qubits", an_qubits, "Comma list of qubit counts")->capture_default_str();
    analyze->add_option("--layers", an_layers, "Comma list of layer counts")->capture_default_str();
    analyze->add_option("--metric", an_metric, "entangling | expressibility | both")->capture_default_str();
    analyze->add_option("--samples", plan.n_samples, "States (or state pairs) per run")->capture_default_str();
    analyze->add_option("--bins", plan.n_bins, "Fidelity histogram bins")->capture_default_str();
    analyze->add_option("--runs", plan.n_runs, "Independent runs")->capture_default_str();
    analyze->add_option("--seed", plan.seed, "Sampling seed shared by all cells")->capture_default_str();
    add_common(analyze);

    // noise
    SpecFlags noise_flags;
    std::string channels = "depolarizing,amplitude_damping";
    std::string rates = "0,0.001,0.01,0.1,0.2";
    auto *noise = app.add_subcommand("noise", "Evaluate noiselessly trained models under noise");
    add_spec_options(noise, noise_flags);
    noise->add_option("--channels", channels, "Comma list of channels")->capture_default_str();
    noise->add_option("--rates", rates, "Comma list of rates")->capture_default_str();
    add_common(noise);

    // report
    SpecFlags report_flags;
    auto *report = app.add_subcommand("report", "Closed-form parameter and circuit counts");
    add_spec_options(report, report_flags);
    add_common(report);

    // gradcheck
    int gc_models = 50;
    int gc_qubits = 3;
    int gc_layers = 3;
    int gc_samples = 4;
    double gc_step = 1e-5;
    double gc_tol = 1e-5;
    std::uint64_t gc_seed = 0;
    auto *gradcheck = app.add_subcommand("gradcheck", "Finite-difference audit of hybrid gradients");
    gradcheck->add_option("--models", gc_models, "Random models to audit")->capture_default_str();
    gradcheck->add_option("--qubits", gc_qubits, "Maximum qubits")->capture_default_str();
    gradcheck->add_option("--layers", gc_layers, "Maximum layers")->capture_default_str();
    gradcheck->add_option("--samples", gc_samples, "Batch size of the audited loss")->capture_default_str();
    gradcheck->add_option("--step", gc_step, "Central difference step")->capture_default_str();
    gradcheck->add_option("--tol", gc_tol, "Maximum relative error")->capture_default_str();
    gradcheck->add_option("--seed", gc_seed, "Seed")->capture_default_str();
    add_common(gradcheck);

    // dataset
    std::string ds_task = "univariate";
    std::uint64_t ds_seed = 0;
    auto *dataset = app.add_subcommand("dataset", "Write the damped-sinc train/test split as CSV");
    dataset->add_option("--task", ds_task, "univariate | multivariate")->capture_default_str();
    dataset->add_option("--data-seed", ds_seed, "Dataset seed")->capture_default_str();
    add_common(dataset);

    CLI11_PARSE(app, argc, argv);

    if (print_config) {
        std::cout << app.config_to_str(true, false);
        return 0;
    }

    try {
        if (approx->parsed()) {
            const auto spec = resolve(approx_flags, output_dir);
            if (!sweep_embeddings.empty() || !sweep_layers.empty()) {
                std::vector<EmbeddingKind> kinds;
                for (const auto &k : split_list(sweep_embeddings.empty() ? "angle,amplitude" : sweep_embeddings)) {
                    kinds.push_back(embedding_kind_from_string(k));
                }
                std::vector<int> layers;
                for (const auto &l : split_list(sweep_layers.empty() ? std::to_string(spec.n_layers) : sweep_layers)) {
                    layers.push_back(std::stoi(l));
                }
                emit_table(embedding_sweep(spec, kinds, layers, jobs), output_dir);
                return 0;
            }
            const auto report_counts = complexity_report(spec);
            std::printf("%s on %s: %zu classical + %zu quantum parameters\n", std::string(to_string(spec.model)).c_str(),
                        std::string(to_string(spec.task)).c_str(), report_counts.classical_param_count,
                        report_counts.quantum_param_count);
            const auto agg = run_experiment(spec, jobs);
            print_aggregate(agg);
            return agg.n_ok > 0 ? 0 : 1;
        }
        if (analyze->parsed()) {
            std::vector<int> qubits;
            std::vector<int> layers;
            for (const auto &q : split_list(an_qubits)) {
                qubits.push_back(std::stoi(q));
            }
            for (const auto &l : split_list(an_layers)) {
                layers.push_back(std::stoi(l));
            }
            if (an_metric != "entangling" && an_metric != "expressibility" && an_metric != "both") {
                throw std::invalid_argument("--metric must be entangling, expressibility or both");
            }
            const bool ent = an_metric != "expressibility";
            const bool expr = an_metric != "entangling";
            emit_table(metrics_sweep(qubits, layers, plan, ent, expr, jobs), output_dir);
            return 0;
        }
        if (noise->parsed()) {
            const auto spec = resolve(noise_flags, output_dir);
            std::vector<NoiseChannel> chans;
            std::vector<double> rate_values;
            for (const auto &c : split_list(channels)) {
                chans.push_back(noise_channel_from_string(c));
            }
            for (const auto &r : split_list(rates)) {
                rate_values.push_back(parse_double(r));
            }
            emit_table(noise_sweep(spec, chans, rate_values, jobs), output_dir);
            return 0;
        }
        if (report->parsed()) {
            const auto spec = resolve(report_flags, output_dir);
            const std::string text = complexity_report(spec).to_json().dump(2) + "\n";
            if (output_dir.empty()) {
                std::cout << text;
            } else {
                write_text_file(std::filesystem::path(output_dir) / "report.json", text);
            }
            return 0;
        }
        if (gradcheck->parsed()) {
            std::mt19937_64 rng(gc_seed);
            double worst = 0.0;
            std::string csv = "model,params,max_rel_error\n";
            for (int m = 0; m < gc_models; ++m) {
                const int d = std::uniform_int_distribution<int>(1, 3)(rng);
                const Model model = random_audit_model(rng, gc_qubits, gc_layers, d);
                const auto batch = random_audit_batch(rng, d, gc_samples);
                std::vector<const Sample *> ptrs;
                for (const auto &s : batch) {
                    ptrs.push_back(&s);
                }
                const auto r = finite_difference_audit(model, ptrs, gc_step);
                worst = std::max(worst, r.max_rel_error);
                std::printf("model %2d  params %3zu  max rel error %.3e\n", m, r.n_params, r.max_rel_error);
                csv += std::to_string(m) + ',' + std::to_string(r.n_params) + ',' + format_double(r.max_rel_error) +
                       '\n';
            }
            if (!output_dir.empty()) {
                write_text_file(std::filesystem::path(output_dir) / "gradcheck.csv", csv);
            }
            std::printf("worst relative error %.3e (tolerance %.1e): %s\n", worst, gc_tol,
                        worst <= gc_tol ? "PASS" : "FAIL");
            return worst <= gc_tol ? 0 : 1;
        }
        if (dataset->parsed()) {
            DatasetSpec ds;
            ds.function = task_from_string(ds_task) == Task::MULTIVARIATE ? TargetFunction::DAMPED_SINC_2D
                                                                          : TargetFunction::DAMPED_SINC_1D;
            ds.seed = ds_seed;
            const auto split = make_dataset(ds);
            const std::filesystem::path dir = output_dir.empty() ? "." : output_dir;
            std::filesystem::create_directories(dir);
            write_dataset_csv(dir / "train.csv", split.train);
            write_dataset_csv(dir / "test.csv", split.test);
            std::printf("wrote %zu train and %zu test rows to %s\n", split.train.size(), split.test.size(),
                        dir.string().c_str());
            return 0;
        }
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
