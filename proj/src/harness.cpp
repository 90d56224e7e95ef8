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

#include "hqnn/harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace hqnn {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <class... Ts> struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

std::size_t pow2(int n) { return std::size_t{1} << n; }

int csv_input_dim(const std::filesystem::path &path) {
    std::ifstream in(path);
    std::string header;
    if (!in || !std::getline(in, header)) {
        throw std::invalid_argument("cannot read CSV header from " + path.string());
    }
    return static_cast<int>(std::count(header.begin(), header.end(), ','));
}

// Width of the circuit input fed by the embedding network.
std::size_t embed_output_width(const ExperimentSpec &spec) {
    return spec.embedding.kind == EmbeddingKind::ANGLE ? static_cast<std::size_t>(spec.n_qubits)
                                                        : pow2(spec.n_qubits);
}

nlohmann::ordered_json train_json(const TrainConfig &c) {
    nlohmann::ordered_json j;
    j["learning_rate"] = c.learning_rate;
    j["weight_decay"] = c.weight_decay;
    j["beta1"] = c.beta1;
    j["beta2"] = c.beta2;
    j["epsilon"] = c.epsilon;
    j["epochs"] = c.epochs;
    j["batch_size"] = c.batch_size;
    j["seed"] = c.seed;
    j["repeats"] = c.repeats;
    j["cosine_schedule"] = c.cosine_schedule;
    return j;
}

TrainConfig train_from_json(const nlohmann::json &j) {
    TrainConfig c;
    c.learning_rate = j.at("learning_rate").get<double>();
    c.weight_decay = j.at("weight_decay").get<double>();
    c.beta1 = j.at("beta1").get<double>();
    c.beta2 = j.at("beta2").get<double>();
    c.epsilon = j.at("epsilon").get<double>();
    c.epochs = j.at("epochs").get<int>();
    c.batch_size = j.at("batch_size").get<int>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.repeats = j.at("repeats").get<int>();
    c.cosine_schedule = j.at("cosine_schedule").get<bool>();
    return c;
}

std::vector<std::string> split_csv_line(const std::string &line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        cells.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
        cells.emplace_back();
    }
    return cells;
}

std::string join_csv(const std::vector<std::string> &cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += cells[i];
    }
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// Enums

std::string_view to_string(Task task) {
    switch (task) {
    case Task::UNIVARIATE:
        return "univariate";
    case Task::MULTIVARIATE:
        return "multivariate";
    case Task::CUSTOM_CSV:
        break;
    }
    return "custom_csv";
}

Task task_from_string(std::string_view name) {
    for (auto t : {Task::UNIVARIATE, Task::MULTIVARIATE, Task::CUSTOM_CSV}) {
        if (name == to_string(t)) {
            return t;
        }
    }
    throw std::invalid_argument("unknown task '" + std::string(name) + "'");
}

std::string_view to_string(ModelKind kind) {
    switch (kind) {
    case ModelKind::NN:
        return "nn";
    case ModelKind::QNN:
        return "qnn";
    case ModelKind::HQNN:
        return "hqnn";
    case ModelKind::HQNN_NO_CIN:
        break;
    }
    return "hqnn_no_cin";
}

ModelKind model_kind_from_string(std::string_view name) {
    for (auto m : {ModelKind::NN, ModelKind::QNN, ModelKind::HQNN, ModelKind::HQNN_NO_CIN}) {
        if (name == to_string(m)) {
            return m;
        }
    }
    throw std::invalid_argument("unknown model '" + std::string(name) + "'");
}

TrainConfig approx_train_config() {
    TrainConfig c;
    c.batch_size = 1;
    return c;
}

// ---------------------------------------------------------------------------
// ExperimentSpec

int ExperimentSpec::input_dim() const {
    switch (task) {
    case Task::UNIVARIATE:
        return 1;
    case Task::MULTIVARIATE:
        return 2;
    case Task::CUSTOM_CSV:
        break;
    }
    return csv_input_dim(csv_path);
}

void ExperimentSpec::validate() const {
    train.validate();
    noise.validate();
    if (n_layers < 1) {
        throw std::invalid_argument("n_layers must be at least 1");
    }
    if (task == Task::CUSTOM_CSV && (csv_path.empty() || csv_train_rows < 1)) {
        throw std::invalid_argument("custom_csv needs a CSV path and a positive train row count");
    }
    const int d = input_dim();
    if (d < 1) {
        throw std::invalid_argument("dataset has no feature columns");
    }
    if (model == ModelKind::NN) {
        if (nn_width < 1) {
            throw std::invalid_argument("nn_width must be positive");
        }
        if (!noise.is_noiseless()) {
            throw std::invalid_argument("noise channels apply to quantum models only");
        }
        return;
    }
    if (n_qubits < 1 || n_qubits > 16) {
        throw std::invalid_argument("n_qubits must be in [1, 16]");
    }
    if (!noise.is_noiseless() && n_qubits > kMaxNoisyQubits) {
        throw std::invalid_argument("noisy simulation supports at most " + std::to_string(kMaxNoisyQubits) +
                                    " qubits");
    }
    if (model == ModelKind::QNN || model == ModelKind::HQNN_NO_CIN) {
        if (embedding.kind == EmbeddingKind::ANGLE && d != n_qubits) {
            throw std::invalid_argument("angle embedding without an embedding network needs input dimension " +
                                        std::to_string(d) + " to equal n_qubits " + std::to_string(n_qubits));
        }
        if (embedding.kind == EmbeddingKind::AMPLITUDE && static_cast<std::size_t>(d) > pow2(n_qubits)) {
            throw std::invalid_argument("amplitude embedding input exceeds 2^n_qubits");
        }
    }
}

nlohmann::ordered_json ExperimentSpec::to_json() const {
    nlohmann::ordered_json j;
    j["task"] = to_string(task);
    j["model"] = to_string(model);
    j["qubits"] = n_qubits;
    j["layers"] = n_layers;
    j["embedding"] = to_string(embedding.kind);
    j["auto_normalize"] = embedding.auto_normalize;
    j["range"] = range;
    j["nn_width"] = nn_width;
    j["embed_activation"] = to_string(embed_activation);
    j["noise"] = {{"channel", to_string(noise.channel)},
                  {"rate", noise.rate},
                  {"insertion", to_string(noise.insertion)}};
    j["train_under_noise"] = train_under_noise;
    j["train"] = train_json(train);
    j["data_seed"] = data_seed;
    j["csv_path"] = csv_path.string();
    j["csv_train_rows"] = csv_train_rows;
    return j;
}

ExperimentSpec ExperimentSpec::from_json(const nlohmann::json &doc) {
    ExperimentSpec s;
    s.task = task_from_string(doc.at("task").get<std::string>());
    s.model = model_kind_from_string(doc.at("model").get<std::string>());
    s.n_qubits = doc.at("qubits").get<int>();
    s.n_layers = doc.at("layers").get<int>();
    s.embedding.kind = embedding_kind_from_string(doc.at("embedding").get<std::string>());
    s.embedding.auto_normalize = doc.at("auto_normalize").get<bool>();
    s.range = doc.at("range").get<int>();
    s.nn_width = doc.at("nn_width").get<int>();
    s.embed_activation = activation_from_string(doc.at("embed_activation").get<std::string>());
    const auto &noise = doc.at("noise");
    s.noise.channel = noise_channel_from_string(noise.at("channel").get<std::string>());
    s.noise.rate = noise.at("rate").get<double>();
    s.noise.insertion = noise_insertion_from_string(noise.at("insertion").get<std::string>());
    s.train_under_noise = doc.at("train_under_noise").get<bool>();
    s.train = train_from_json(doc.at("train"));
    s.data_seed = doc.at("data_seed").get<std::uint64_t>();
    s.csv_path = doc.at("csv_path").get<std::string>();
    s.csv_train_rows = doc.at("csv_train_rows").get<int>();
    return s;
}

// ---------------------------------------------------------------------------
// Complexity and models

nlohmann::ordered_json ComplexityReport::to_json() const {
    nlohmann::ordered_json j;
    j["qubits"] = n_qubits;
    j["layers"] = n_layers;
    j["classical_params"] = classical_param_count;
    j["quantum_params"] = quantum_param_count;
    j["u4_gates"] = u4_gate_count;
    j["circuit_depth"] = circuit_depth;
    j["circuit_depth_expression"] = circuit_depth_expression;
    return j;
}

std::vector<int> nn_widths(int input_dim, int width, int n_layers) {
    if (input_dim < 1 || width < 1 || n_layers < 1) {
        throw std::invalid_argument("nn_widths: arguments must be positive");
    }
    std::vector<int> widths{input_dim};
    for (int l = 1; l < n_layers; ++l) {
        widths.push_back(width);
    }
    widths.push_back(1);
    return widths;
}

ComplexityReport complexity_report(const ExperimentSpec &spec) {
    spec.validate();
    const auto d = static_cast<std::size_t>(spec.input_dim());
    const auto L = static_cast<std::size_t>(spec.n_layers);
    ComplexityReport r;
    r.n_layers = spec.n_layers;
    if (spec.model == ModelKind::NN) {
        const auto w = static_cast<std::size_t>(spec.nn_width);
        // First layer d -> w, L - 2 hidden w -> w, output w -> 1.
        r.classical_param_count = L == 1 ? d + 1 : (d + 1) * w + (L - 2) * (w + 1) * w + (w + 1);
        r.circuit_depth_expression = "none";
        return r;
    }
    const auto n = static_cast<std::size_t>(spec.n_qubits);
    r.n_qubits = spec.n_qubits;
    r.quantum_param_count = 3 * n * L;
    r.u4_gate_count = u4_gate_count(spec.n_qubits, spec.n_layers, spec.embedding.kind, spec.range);
    r.circuit_depth = circuit_depth(spec.n_qubits, spec.n_layers, spec.embedding.kind);
    r.circuit_depth_expression = spec.embedding.kind == EmbeddingKind::ANGLE ? "(4+n)L" : "(2^n+3+n)L";
    switch (spec.model) {
    case ModelKind::HQNN: {
        const std::size_t m = embed_output_width(spec);
        r.classical_param_count = (d + 1) * m + (n + 1);
        break;
    }
    case ModelKind::HQNN_NO_CIN:
        r.classical_param_count = n + 1;
        break;
    default:
        r.classical_param_count = 0;
    }
    return r;
}

std::size_t classical_param_count(const Model &model) {
    return std::visit([](const auto &m) { return m.classical_param_count(); }, model);
}

std::size_t quantum_param_count(const Model &model) {
    return std::visit([](const auto &m) { return m.quantum_param_count(); }, model);
}

Model build_model(const ExperimentSpec &spec, std::mt19937_64 &rng) {
    const ComplexityReport expected = complexity_report(spec);
    const int d = spec.input_dim();
    std::optional<Model> model;
    if (spec.model == ModelKind::NN) {
        model.emplace(ClassicalModel(
            DenseNet::random(nn_widths(d, spec.nn_width, spec.n_layers), Activation::RELU, Activation::IDENTITY, rng)));
    } else {
        const int n = spec.n_qubits;
        auto circuit = ReuploadCircuit::random_uniform(n, spec.n_layers, spec.embedding, rng, spec.range);
        std::optional<DenseNet> embed;
        std::optional<DenseNet> regress;
        if (spec.model == ModelKind::HQNN) {
            embed = DenseNet::random({d, static_cast<int>(embed_output_width(spec))}, {spec.embed_activation}, rng);
        }
        if (spec.model == ModelKind::HQNN || spec.model == ModelKind::HQNN_NO_CIN) {
            regress = DenseNet::random({n, 1}, {Activation::IDENTITY}, rng);
        }
        HybridModel hybrid(std::move(embed), std::move(circuit), std::move(regress));
        if (spec.train_under_noise) {
            hybrid.set_noise(spec.noise);
        }
        model.emplace(std::move(hybrid));
    }
    const std::size_t c = classical_param_count(*model);
    const std::size_t q = quantum_param_count(*model);
    if (c != expected.classical_param_count || q != expected.quantum_param_count) {
        throw ParameterAuditError("parameter audit failed for " + std::string(to_string(spec.model)) + ": built " +
                                  std::to_string(c) + " classical + " + std::to_string(q) +
                                  " quantum, formulas give " + std::to_string(expected.classical_param_count) +
                                  " + " + std::to_string(expected.quantum_param_count));
    }
    return std::move(*model);
}

DatasetSplit load_experiment_data(const ExperimentSpec &spec) {
    if (spec.task == Task::CUSTOM_CSV) {
        return split_dataset(read_dataset_csv(spec.csv_path), static_cast<std::size_t>(spec.csv_train_rows));
    }
    DatasetSpec ds;
    ds.function = spec.task == Task::UNIVARIATE ? TargetFunction::DAMPED_SINC_1D : TargetFunction::DAMPED_SINC_2D;
    ds.seed = spec.data_seed;
    return make_dataset(ds);
}

std::vector<double> predict(const Model &model, std::span<const double> x) {
    return std::visit([&](const auto &m) { return m.predict(x); }, model);
}

MetricReport evaluate_model(const Model &model, const Dataset &data, const NoiseModel &noise) {
    if (data.empty()) {
        throw std::invalid_argument("evaluate_model: empty dataset");
    }
    std::vector<double> y;
    std::vector<double> p;
    auto collect = [&](const auto &m) {
        for (const auto &s : data) {
            const auto out = m.predict(s.x);
            if (out.size() != 1 || s.y.size() != 1) {
                throw DimensionError("evaluate_model: metrics need scalar targets");
            }
            y.push_back(s.y[0]);
            p.push_back(out[0]);
        }
    };
    std::visit(overloaded{[&](const ClassicalModel &m) {
                              if (!noise.is_noiseless()) {
                                  throw std::invalid_argument("noise channels apply to quantum models only");
                              }
                              collect(m);
                          },
                          [&](const HybridModel &m) {
                              HybridModel noisy = m;
                              noisy.set_noise(noise);
                              collect(noisy);
                          }},
               model);
    return evaluate(y, p);
}

// ---------------------------------------------------------------------------
// Runs

RunResult run_single(const ExperimentSpec &spec, const DatasetSplit &data, int run_index) {
    RunResult run;
    run.seed = spec.train.seed + static_cast<std::uint64_t>(run_index);
    try {
        std::mt19937_64 rng(run.seed);
        Model model = build_model(spec, rng);
        run.classical_params = classical_param_count(model);
        run.quantum_params = quantum_param_count(model);
        TrainConfig config = spec.train;
        config.seed = run.seed;
        Model best = std::visit(
            [&](auto &m) -> Model {
                auto result = train(m, data.train, config, data.test.empty() ? nullptr : &data.test);
                run.trace = std::move(result.trace);
                run.best_epoch = result.best_epoch;
                return std::move(result.model);
            },
            model);
        run.train_metrics = evaluate_model(best, data.train, spec.noise);
        if (!data.test.empty()) {
            run.test_metrics = evaluate_model(best, data.test, spec.noise);
        }
        run.model = std::move(best);
        run.ok = true;
    } catch (const ParameterAuditError &) {
        throw;
    } catch (const std::invalid_argument &) {
        throw;
    } catch (const std::exception &e) {
        run.ok = false;
        run.error = e.what();
    }
    return run;
}

std::pair<MetricReport, MetricReport> mean_and_std(const std::vector<MetricReport> &reports) {
    MetricReport mean;
    MetricReport sd;
    const std::array<double MetricReport::*, 6> fields{&MetricReport::mse,       &MetricReport::mae,
                                                       &MetricReport::rmse,      &MetricReport::pearson_r,
                                                       &MetricReport::sd,        &MetricReport::ci};
    const auto k = static_cast<double>(reports.size());
    for (auto f : fields) {
        if (reports.empty()) {
            mean.*f = kNaN;
            sd.*f = kNaN;
            continue;
        }
        std::vector<double> vals;
        for (const auto &r : reports) {
            vals.push_back(r.*f);
        }
        const double mu = pairwise_sum(vals) / k;
        double ss = 0.0;
        for (double v : vals) {
            ss += (v - mu) * (v - mu);
        }
        mean.*f = mu;
        sd.*f = reports.size() > 1 ? std::sqrt(ss / (k - 1.0)) : 0.0;
    }
    mean.n = reports.empty() ? 0 : reports.front().n;
    sd.n = reports.size();
    return {mean, sd};
}

nlohmann::ordered_json AggregateResult::to_json(const ExperimentSpec &spec) const {
    nlohmann::ordered_json j;
    j["config"] = spec.to_json();
    j["repeats"] = runs.size();
    j["n_ok"] = n_ok;
    j["n_failed"] = n_failed;
    auto seeds = nlohmann::ordered_json::array();
    auto failed = nlohmann::ordered_json::array();
    for (const auto &r : runs) {
        seeds.push_back(r.seed);
        if (!r.ok) {
            failed.push_back({{"seed", r.seed}, {"error", r.error}});
        }
    }
    j["seeds"] = seeds;
    j["failed"] = failed;
    j["test_mean"] = mean.to_json();
    j["test_std"] = std.to_json();
    return j;
}

AggregateResult run_experiment(const ExperimentSpec &spec, int jobs) {
    spec.validate();
    const DatasetSplit data = load_experiment_data(spec);
    AggregateResult agg;
    agg.runs.resize(static_cast<std::size_t>(spec.train.repeats));
    parallel_for(agg.runs.size(), jobs, [&](std::size_t r) {
        agg.runs[r] = run_single(spec, data, static_cast<int>(r));
        if (!spec.output_dir.empty()) {
            write_run_files(spec.output_dir / run_dir_name(agg.runs[r].seed), spec, agg.runs[r]);
        }
    });
    std::vector<MetricReport> ok;
    for (const auto &r : agg.runs) {
        if (r.ok) {
            ok.push_back(r.test_metrics);
            ++agg.n_ok;
        } else {
            ++agg.n_failed;
        }
    }
    std::tie(agg.mean, agg.std) = mean_and_std(ok);
    if (!spec.output_dir.empty()) {
        write_text_file(spec.output_dir / "aggregate.json", agg.to_json(spec).dump(2) + "\n");
    }
    return agg;
}

// ---------------------------------------------------------------------------
// Files

std::string run_dir_name(std::uint64_t seed) { return "run-" + std::to_string(seed); }

void write_text_file(const std::filesystem::path &path, const std::string &text) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    out << text;
    if (!out) {
        throw std::runtime_error("failed writing " + path.string());
    }
}

std::string read_text_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_trace_csv(const std::filesystem::path &path, const std::vector<EpochRecord> &trace) {
    std::string text = "epoch,train_mse,test_mse\n";
    for (const auto &rec : trace) {
        text += std::to_string(rec.epoch) + ',' + format_double(rec.train_mse) + ',' + format_double(rec.test_mse) +
                '\n';
    }
    write_text_file(path, text);
}

std::vector<EpochRecord> read_trace_csv(const std::filesystem::path &path) {
    std::istringstream in(read_text_file(path));
    std::string line;
    if (!std::getline(in, line) || line != "epoch,train_mse,test_mse") {
        throw std::runtime_error(path.string() + ": unexpected trace header");
    }
    std::vector<EpochRecord> trace;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const auto cells = split_csv_line(line);
        if (cells.size() != 3) {
            throw std::runtime_error(path.string() + ": malformed trace row");
        }
        trace.push_back({std::stoi(cells[0]), parse_double(cells[1]), parse_double(cells[2])});
    }
    return trace;
}

nlohmann::ordered_json run_summary_json(const ExperimentSpec &spec, const RunResult &run) {
    nlohmann::ordered_json j;
    j["status"] = run.ok ? "ok" : "failed";
    if (!run.ok) {
        j["error"] = run.error;
    }
    j["seed"] = run.seed;
    j["data_seed"] = spec.data_seed;
    j["config"] = spec.to_json();
    j["params"] = {{"classical", run.classical_params}, {"quantum", run.quantum_params}};
    j["best_epoch"] = run.best_epoch;
    if (run.ok) {
        j["train"] = run.train_metrics.to_json();
        j["test"] = run.test_metrics.to_json();
    }
    return j;
}

void write_run_files(const std::filesystem::path &run_dir, const ExperimentSpec &spec, const RunResult &run) {
    std::filesystem::create_directories(run_dir);
    write_trace_csv(run_dir / "trace.csv", run.trace);
    write_text_file(run_dir / "summary.json", run_summary_json(spec, run).dump(2) + "\n");
}

RunSummary read_run_summary(const std::filesystem::path &path) {
    const auto doc = nlohmann::json::parse(read_text_file(path));
    RunSummary s;
    s.seed = doc.at("seed").get<std::uint64_t>();
    s.ok = doc.at("status").get<std::string>() == "ok";
    if (s.ok) {
        s.train_metrics = MetricReport::from_json(doc.at("train"));
        s.test_metrics = MetricReport::from_json(doc.at("test"));
    }
    return s;
}

// ---------------------------------------------------------------------------
// Sweeps

std::string SweepTable::to_csv() const {
    std::string out = join_csv(header) + '\n';
    for (const auto &row : rows) {
        if (row.size() != header.size()) {
            throw std::logic_error("sweep row width does not match the header");
        }
        out += join_csv(row) + '\n';
    }
    return out;
}

SweepTable SweepTable::from_csv(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    SweepTable t;
    if (!std::getline(in, line)) {
        throw std::runtime_error("sweep CSV is empty");
    }
    t.header = split_csv_line(line);
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        auto cells = split_csv_line(line);
        if (cells.size() != t.header.size()) {
            throw std::runtime_error("sweep CSV row width does not match the header");
        }
        t.rows.push_back(std::move(cells));
    }
    return t;
}

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)> &fn) {
    const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(jobs, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) {
                    try {
                        fn(i);
                    } catch (...) {
                        std::lock_guard lock(error_mutex);
                        if (!first_error) {
                            first_error = std::current_exception();
                        }
                    }
                }
            });
        }
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
}

SweepTable metrics_sweep(const std::vector<int> &qubits, const std::vector<int> &layers, const SamplingPlan &plan,
                         bool entangling, bool expressibility_metric, int jobs) {
    if (qubits.empty() || layers.empty() || (!entangling && !expressibility_metric)) {
        throw std::invalid_argument("metrics_sweep: empty grid or no metric selected");
    }
    plan.validate();
    struct Cell {
        int n;
        int L;
        bool ent;
    };
    std::vector<Cell> cells;
    for (bool ent : {true, false}) {
        if ((ent && !entangling) || (!ent && !expressibility_metric)) {
            continue;
        }
        for (int n : qubits) {
            for (int L : layers) {
                cells.push_back({n, L, ent});
            }
        }
    }
    std::vector<MetricEstimate> results(cells.size());
    parallel_for(cells.size(), jobs, [&](std::size_t i) {
        const auto family = pqc_family(cells[i].n, cells[i].L);
        results[i] = cells[i].ent ? entangling_capability(family, plan) : expressibility(family, plan);
    });
    SweepTable t;
    t.header = {"qubits", "layers", "metric", "mean", "std", "sample_std", "n_samples", "n_bins", "seed"};
    for (std::size_t i = 0; i < cells.size(); ++i) {
        t.rows.push_back({std::to_string(cells[i].n), std::to_string(cells[i].L),
                          cells[i].ent ? "entangling_capability" : "expressibility_kl",
                          format_double(results[i].mean), format_double(results[i].std_over_runs),
                          format_double(results[i].sample_std), std::to_string(plan.n_samples),
                          std::to_string(plan.n_bins), std::to_string(plan.seed)});
    }
    return t;
}

SweepTable noise_sweep(const ExperimentSpec &spec, const std::vector<NoiseChannel> &channels,
                       const std::vector<double> &rates, int jobs) {
    if (spec.model == ModelKind::NN) {
        throw std::invalid_argument("noise_sweep needs a quantum model");
    }
    if (channels.empty() || rates.empty()) {
        throw std::invalid_argument("noise_sweep: empty grid");
    }
    ExperimentSpec clean = spec;
    clean.noise = {};
    clean.train_under_noise = false;
    clean.validate();
    for (double r : rates) {
        NoiseModel{NoiseChannel::DEPOLARIZING, r}.validate();
    }
    const DatasetSplit data = load_experiment_data(clean);
    const auto repeats = static_cast<std::size_t>(clean.train.repeats);
    std::vector<RunResult> runs(repeats);
    parallel_for(repeats, jobs, [&](std::size_t r) { runs[r] = run_single(clean, data, static_cast<int>(r)); });

    struct Cell {
        std::size_t run;
        NoiseChannel channel;
        double rate;
    };
    std::vector<Cell> cells;
    for (std::size_t r = 0; r < repeats; ++r) {
        for (auto c : channels) {
            for (double rate : rates) {
                cells.push_back({r, c, rate});
            }
        }
    }
    std::vector<double> mse_values(cells.size(), kNaN);
    parallel_for(cells.size(), jobs, [&](std::size_t i) {
        const auto &run = runs[cells[i].run];
        if (run.ok) {
            const NoiseModel nm{cells[i].channel, cells[i].rate, spec.noise.insertion};
            mse_values[i] = evaluate_model(*run.model, data.test, nm).mse;
        }
    });
    SweepTable t;
    t.header = {"channel", "rate", "seed", "test_mse", "status"};
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto &run = runs[cells[i].run];
        t.rows.push_back({std::string(to_string(cells[i].channel)), format_double(cells[i].rate),
                          std::to_string(run.seed), format_double(mse_values[i]), run.ok ? "ok" : "failed"});
    }
    return t;
}

SweepTable embedding_sweep(const ExperimentSpec &spec, const std::vector<EmbeddingKind> &embeddings,
                           const std::vector<int> &layers, int jobs) {
    if (embeddings.empty() || layers.empty()) {
        throw std::invalid_argument("embedding_sweep: empty grid");
    }
    std::vector<ExperimentSpec> cells;
    for (auto kind : embeddings) {
        for (int L : layers) {
            ExperimentSpec cell = spec;
            cell.embedding.kind = kind;
            cell.n_layers = L;
            cell.output_dir.clear();
            cell.validate();
            cells.push_back(cell);
        }
    }
    std::vector<AggregateResult> results(cells.size());
    parallel_for(cells.size(), jobs, [&](std::size_t i) { results[i] = run_experiment(cells[i], 1); });
    SweepTable t;
    t.header = {"embedding",      "qubits",        "layers",       "classical_params",
                "quantum_params", "mean_test_mse", "std_test_mse", "n_failed"};
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto report = complexity_report(cells[i]);
        t.rows.push_back({std::string(to_string(cells[i].embedding.kind)), std::to_string(cells[i].n_qubits),
                          std::to_string(cells[i].n_layers), std::to_string(report.classical_param_count),
                          std::to_string(report.quantum_param_count), format_double(results[i].mean.mse),
                          format_double(results[i].std.mse), std::to_string(results[i].n_failed)});
    }
    return t;
}

} // namespace hqnn
