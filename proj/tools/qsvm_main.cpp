#include <array>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsvm/errors.hpp"
#include "qsvm/experiment.hpp"
#include "qsvm/rng.hpp"
#include "qsvm/transpile.hpp"
#include "qsvm/version.hpp"

namespace {

using namespace qsvm;

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNonConvergence = 4;

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw data_error("cannot write output file: " + path);
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot open file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::optional<std::uint64_t> parse_shots(const std::string& text) {
    if (text == "exact") return std::nullopt;
    try {
        return std::stoull(text);
    } catch (const std::exception&) {
        throw config_error("--shots expects a positive integer or 'exact'");
    }
}

TranspileMode parse_mode(const std::string& text) {
    if (text == "nonopt") return TranspileMode::NonOptimized;
    if (text == "opt") return TranspileMode::Optimized;
    throw config_error("--mode expects 'nonopt' or 'opt'");
}

struct CommonFlags {
    std::string shots = "exact";
    std::uint64_t seed = 1;
    std::string mode = "nonopt";
    std::string noise = "off";
    double C = 1.0;
    double gamma = kDefaultGamma;
    int threads = 1;
    std::string out;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--shots", flags.shots, "shot count or 'exact'");
    cmd->add_option("--seed", flags.seed, "global seed");
    cmd->add_option("--mode", flags.mode, "transpilation mode: nonopt|opt");
    cmd->add_option("--noise", flags.noise, "noise spec: off|default|<file.json>");
    cmd->add_option("--C", flags.C, "SVM regularization parameter");
    cmd->add_option("--gamma", flags.gamma, "graph encoding angle scale");
    cmd->add_option("--threads", flags.threads, "worker threads for kernel entries");
    cmd->add_option("--out", flags.out, "output file path");
}

// Grid commands choose per-row shot counts themselves, so only single
// experiments insist on --shots when the noise channel is on.
ExperimentConfig make_config(const CommonFlags& flags, bool shots_chosen_later = false) {
    ExperimentConfig config;
    config.seed = flags.seed;
    config.shots = parse_shots(flags.shots);
    config.noise = parse_noise_spec(flags.noise);
    config.mode = parse_mode(flags.mode);
    config.C = flags.C;
    config.gamma = flags.gamma;
    config.threads = flags.threads;
    if (config.noise.enabled && !config.shots && !shots_chosen_later) {
        throw config_error("noisy estimation needs --shots (trajectories are sampled)");
    }
    return config;
}

void emit_report(const ExperimentReport& report, const std::string& out_path) {
    std::cout << report.human_row() << "\n";
    if (!out_path.empty()) write_file(out_path, report.to_json());
}

std::string cell(const ExperimentReport* report, bool test_column) {
    if (report == nullptr) return "-";
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.1f (%.4f)",
                  test_column ? report->test_accuracy_percent : report->train_accuracy_percent,
                  test_column ? report->test_distance : report->train_distance);
    return buf;
}

// Row per (subject, repeat), non-optimized and optimized cells side by side,
// the layout of the published accuracy/distance tables.
void print_grid_table(const std::vector<ExperimentReport>& reports) {
    std::vector<std::string> order;
    std::map<std::string, std::array<const ExperimentReport*, 2>> rows;
    std::map<std::string, std::uint64_t> shots_of;
    for (const auto& report : reports) {
        std::string key = report.subject;
        const std::size_t rep = report.experiment_id.rfind("/rep");
        if (rep != std::string::npos) key += " " + report.experiment_id.substr(rep + 1);
        if (rows.find(key) == rows.end()) {
            order.push_back(key);
            rows[key] = {nullptr, nullptr};
        }
        rows[key][report.mode == TranspileMode::Optimized ? 1 : 0] = &report;
        if (report.shots) shots_of[key] = *report.shots;
    }
    std::printf("%-16s %-6s | %-14s %-14s | %-14s %-14s\n", "subject", "shots", "nonopt train",
                "nonopt test", "opt train", "opt test");
    for (const std::string& key : order) {
        const auto& pair = rows[key];
        std::printf("%-16s %-6llu | %-14s %-14s | %-14s %-14s\n", key.c_str(),
                    static_cast<unsigned long long>(shots_of[key]),
                    cell(pair[0], false).c_str(), cell(pair[0], true).c_str(),
                    cell(pair[1], false).c_str(), cell(pair[1], true).c_str());
    }
}

void emit_reports(const std::vector<ExperimentReport>& reports, const std::string& out_path) {
    print_grid_table(reports);
    if (!out_path.empty()) {
        std::string combined = "[\n";
        for (std::size_t i = 0; i < reports.size(); ++i) {
            std::string body = reports[i].to_json();
            if (!body.empty() && body.back() == '\n') body.pop_back();
            combined += body;
            combined += i + 1 < reports.size() ? ",\n" : "\n";
        }
        combined += "]\n";
        write_file(out_path, combined);
    }
}

int run(int argc, char** argv) {
    CLI::App app{"Trapped-ion quantum kernel SVM toolkit"};
    app.set_version_flag("--version", kToolkitVersion);
    app.require_subcommand(1);

    // ------------------------------------------------------------------ dataset
    auto* dataset_cmd = app.add_subcommand("dataset", "generate or derive datasets");
    dataset_cmd->require_subcommand(1);

    auto* dataset_graphs = dataset_cmd->add_subcommand("graphs", "seeded ring-graph dataset");
    int ds_n = 3;
    int ds_train = 20, ds_test = 10;
    std::uint64_t ds_seed = 1;
    std::string ds_out;
    dataset_graphs->add_option("--n", ds_n, "vertex count")->required();
    dataset_graphs->add_option("--train", ds_train, "training graphs");
    dataset_graphs->add_option("--test", ds_test, "test graphs");
    dataset_graphs->add_option("--seed", ds_seed, "generation seed");
    dataset_graphs->add_option("--out", ds_out, "output JSON path");
    dataset_graphs->callback([&] {
        const GraphDataset dataset = generate_graph_dataset(ds_n, ds_train, ds_test, ds_seed);
        const std::string text = graph_dataset_to_json(dataset);
        if (ds_out.empty()) {
            std::cout << text;
        } else {
            write_file(ds_out, text);
            std::cout << "wrote " << ds_out << " (" << dataset.train.size() << " train / "
                      << dataset.test.size() << " test)\n";
        }
    });

    auto* dataset_digits = dataset_cmd->add_subcommand("digits", "derive the pinned digit manifest");
    std::string dd_optdigits, dd_out;
    dataset_digits->add_option("--optdigits", dd_optdigits, "Optdigits-format CSV")->required();
    dataset_digits->add_option("--out", dd_out, "manifest output path");
    dataset_digits->callback([&] {
        const std::vector<DigitSample> retained = load_optdigits(dd_optdigits);
        const DigitManifest manifest = derive_digit_manifest(retained, dd_optdigits);
        const std::string text = digit_manifest_to_json(manifest);
        if (dd_out.empty()) {
            std::cout << text;
        } else {
            write_file(dd_out, text);
            std::cout << "wrote " << dd_out << "\n";
        }
    });

    // ------------------------------------------------------------------- kernel
    auto* kernel_cmd = app.add_subcommand("kernel", "compute a kernel matrix");
    CommonFlags kernel_flags;
    std::string k_manifest, k_dataset, k_encoding = "ry", k_rows = "train";
    bool k_json = false, k_pin_diagonal = false;
    kernel_cmd->add_option("--manifest", k_manifest, "digit manifest JSON");
    kernel_cmd->add_option("--dataset", k_dataset, "graph dataset JSON");
    kernel_cmd->add_option("--encoding", k_encoding, "digit encoding: ry|rycx|amplitude");
    kernel_cmd->add_option("--rows", k_rows, "train (Gram) or test (cross kernel)");
    kernel_cmd->add_flag("--json", k_json, "emit JSON instead of CSV");
    kernel_cmd->add_flag("--pin-diagonal", k_pin_diagonal, "write exact 1.0 on the diagonal in shot mode");
    add_common(kernel_cmd, kernel_flags);
    kernel_cmd->callback([&] {
        if (k_manifest.empty() == k_dataset.empty()) {
            throw config_error("provide exactly one of --manifest or --dataset");
        }
        const ExperimentConfig config = make_config(kernel_flags);
        KernelOptions options;
        options.mode = config.shots
                           ? (config.noise.enabled
                                  ? EstimationMode::noisy_mode(*config.shots, config.seed, config.noise)
                                  : EstimationMode::shot_mode(*config.shots, config.seed))
                           : EstimationMode::exact_mode();
        options.threads = config.threads;
        options.pin_diagonal = k_pin_diagonal;

        KernelMatrix matrix;
        if (!k_manifest.empty()) {
            const DigitManifest manifest = load_digit_manifest(k_manifest);
            const DigitEncoding encoding = parse_digit_encoding(k_encoding);
            const auto& rows = k_rows == "test" ? manifest.test : manifest.train;
            options.symmetric = k_rows != "test";
            std::vector<std::string> row_ids, col_ids;
            for (const auto& s : rows) row_ids.push_back(s.id);
            for (const auto& s : manifest.train) col_ids.push_back(s.id);
            matrix = kernel_matrix(row_ids, col_ids,
                                   digit_pair_builder(rows, manifest.train, encoding, config.mode),
                                   options);
        } else {
            const GraphDataset dataset = graph_dataset_from_json(read_file(k_dataset));
            const auto& rows = k_rows == "test" ? dataset.test : dataset.train;
            options.symmetric = k_rows != "test";
            std::vector<std::string> row_ids, col_ids;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                row_ids.push_back((k_rows == "test" ? "test" : "train") + std::to_string(i));
            }
            for (std::size_t i = 0; i < dataset.train.size(); ++i) {
                col_ids.push_back("train" + std::to_string(i));
            }
            matrix = kernel_matrix(row_ids, col_ids,
                                   graph_pair_builder(rows, dataset.train, config.gamma, config.mode),
                                   options);
        }
        const std::string text = k_json ? kernel_to_json(matrix) : kernel_to_csv(matrix);
        if (kernel_flags.out.empty()) {
            std::cout << text;
        } else {
            write_file(kernel_flags.out, text);
            std::cout << "wrote " << kernel_flags.out << " (" << matrix.rows << "x" << matrix.cols
                      << ", mode " << matrix.mode << ")\n";
        }
    });

    // -------------------------------------------------------------------- train
    auto* train_cmd = app.add_subcommand("train", "train an SVM from a Gram matrix");
    std::string t_gram, t_manifest, t_dataset, t_out;
    double t_C = 1.0;
    train_cmd->add_option("--gram", t_gram, "Gram matrix (JSON)")->required();
    train_cmd->add_option("--manifest", t_manifest, "digit manifest (labels source)");
    train_cmd->add_option("--dataset", t_dataset, "graph dataset (labels source)");
    train_cmd->add_option("--C", t_C, "regularization parameter");
    train_cmd->add_option("--out", t_out, "model output path");
    train_cmd->callback([&] {
        if (t_manifest.empty() == t_dataset.empty()) {
            throw config_error("provide exactly one of --manifest or --dataset");
        }
        const KernelMatrix gram = kernel_from_json(read_file(t_gram));
        std::vector<int> labels;
        if (!t_manifest.empty()) {
            for (const auto& s : load_digit_manifest(t_manifest).train) labels.push_back(s.label);
        } else {
            for (const auto& g : graph_dataset_from_json(read_file(t_dataset)).train) {
                labels.push_back(g.label);
            }
        }
        TrainDiagnostics diagnostics;
        const SvmModel model = train(gram, labels, t_C, &diagnostics);
        std::cerr << "iterations=" << diagnostics.iterations << " kkt_gap=" << diagnostics.kkt_gap
                  << " min_gram_eigenvalue=" << diagnostics.min_gram_eigenvalue << "\n";
        const std::string text = svm_model_to_json(model);
        if (t_out.empty()) {
            std::cout << text;
        } else {
            write_file(t_out, text);
            std::cout << "wrote " << t_out << " (" << model.support_indices.size()
                      << " support vectors)\n";
        }
    });

    // ------------------------------------------------------------------ predict
    auto* predict_cmd = app.add_subcommand("predict", "classify rows of a cross kernel");
    std::string p_model, p_cross, p_manifest, p_dataset, p_out;
    predict_cmd->add_option("--model", p_model, "model JSON")->required();
    predict_cmd->add_option("--cross", p_cross, "test-by-train kernel (JSON)")->required();
    predict_cmd->add_option("--manifest", p_manifest, "digit manifest (true labels)");
    predict_cmd->add_option("--dataset", p_dataset, "graph dataset (true labels)");
    predict_cmd->add_option("--out", p_out, "predictions output path");
    predict_cmd->callback([&] {
        const SvmModel model = svm_model_from_json(read_file(p_model));
        const KernelMatrix cross = kernel_from_json(read_file(p_cross));
        nlohmann::json output;
        nlohmann::json predictions = nlohmann::json::array();
        for (std::size_t i = 0; i < cross.rows; ++i) {
            const double value = decision_value(model, cross.row(i));
            predictions.push_back({{"id", cross.row_ids[i]},
                                   {"decision_value", value},
                                   {"label", value >= 0.0 ? +1 : -1}});
        }
        output["predictions"] = predictions;
        std::vector<int> truth;
        if (!p_manifest.empty()) {
            for (const auto& s : load_digit_manifest(p_manifest).test) truth.push_back(s.label);
        } else if (!p_dataset.empty()) {
            for (const auto& g : graph_dataset_from_json(read_file(p_dataset)).test) {
                truth.push_back(g.label);
            }
        }
        if (!truth.empty()) {
            output["accuracy_percent"] = 100.0 * accuracy(model, cross, truth);
        }
        const std::string text = output.dump(2) + "\n";
        if (p_out.empty()) {
            std::cout << text;
        } else {
            write_file(p_out, text);
            std::cout << "wrote " << p_out << "\n";
        }
    });

    // --------------------------------------------------------------- experiment
    auto* experiment_cmd = app.add_subcommand("experiment", "full classification pipelines");
    experiment_cmd->require_subcommand(1);

    auto* exp_digits = experiment_cmd->add_subcommand("digits", "digit image classification");
    CommonFlags exp_d_flags;
    std::string exp_d_manifest = "data/digits_manifest.json";
    std::string exp_d_encoding = "ry";
    bool exp_d_grid = false, exp_d_pin = false;
    exp_digits->add_option("--manifest", exp_d_manifest, "digit manifest JSON");
    exp_digits->add_option("--encoding", exp_d_encoding, "ry|rycx|amplitude");
    exp_digits->add_flag("--grid", exp_d_grid, "run the full published grid");
    exp_digits->add_flag("--pin-diagonal", exp_d_pin, "pin shot-mode Gram diagonals to 1");
    add_common(exp_digits, exp_d_flags);
    exp_digits->callback([&] {
        const auto started = std::chrono::steady_clock::now();
        const DigitManifest manifest = load_digit_manifest(exp_d_manifest);
        ExperimentConfig config = make_config(exp_d_flags, exp_d_grid);
        config.pin_diagonal = exp_d_pin;
        if (exp_d_grid) {
            emit_reports(run_digits_grid(manifest, config), exp_d_flags.out);
        } else {
            emit_report(run_digits_experiment(manifest, parse_digit_encoding(exp_d_encoding), config),
                        exp_d_flags.out);
        }
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
        std::cerr << "elapsed: " << elapsed.count() << " s\n";
    });

    auto* exp_graphs = experiment_cmd->add_subcommand("graphs", "weighted graph classification");
    CommonFlags exp_g_flags;
    int exp_g_n = 3;
    std::string exp_g_dataset;
    bool exp_g_grid = false, exp_g_pin = false;
    exp_graphs->add_option("--n", exp_g_n, "vertex count (dataset generated from --seed)");
    exp_graphs->add_option("--dataset", exp_g_dataset, "pre-generated dataset JSON");
    exp_graphs->add_flag("--grid", exp_g_grid, "run n=3,4,5 in both modes");
    exp_graphs->add_flag("--pin-diagonal", exp_g_pin, "pin shot-mode Gram diagonals to 1");
    add_common(exp_graphs, exp_g_flags);
    exp_graphs->callback([&] {
        const auto started = std::chrono::steady_clock::now();
        ExperimentConfig config = make_config(exp_g_flags, exp_g_grid);
        config.pin_diagonal = exp_g_pin;
        if (exp_g_grid) {
            emit_reports(run_graphs_grid(config), exp_g_flags.out);
        } else {
            GraphDataset dataset;
            if (!exp_g_dataset.empty()) {
                dataset = graph_dataset_from_json(read_file(exp_g_dataset));
            } else {
                dataset = generate_graph_dataset(exp_g_n, 20, 10,
                                                 mix_seed(config.seed, static_cast<std::uint64_t>(exp_g_n)));
            }
            emit_report(run_graphs_experiment(dataset, config), exp_g_flags.out);
        }
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
        std::cerr << "elapsed: " << elapsed.count() << " s\n";
    });

    // ---------------------------------------------------------------- transpile
    auto* transpile_cmd = app.add_subcommand("transpile", "rewrite a circuit file to native gates");
    std::string tr_in, tr_out, tr_mode = "nonopt";
    transpile_cmd->add_option("--in", tr_in, "input circuit text")->required();
    transpile_cmd->add_option("--out", tr_out, "output circuit text");
    transpile_cmd->add_option("--mode", tr_mode, "nonopt (decompose only) or opt");
    transpile_cmd->callback([&] {
        const Circuit input = circuit_from_text(read_file(tr_in));
        const Circuit output = parse_mode(tr_mode) == TranspileMode::NonOptimized
                                   ? transpile_cx(input)
                                   : optimize(transpile_cx(optimize(input)));
        const std::string text = circuit_to_text(output);
        if (tr_out.empty()) {
            std::cout << text;
        } else {
            write_file(tr_out, text);
        }
        auto summarize = [](const Circuit& c) {
            std::ostringstream s;
            for (const auto& [kind, count] : count_gates(c)) {
                if (count > 0) s << gate_kind_name(kind) << "=" << count << " ";
            }
            return s.str();
        };
        std::cerr << "gates: " << input.size() << " -> " << output.size() << "  [" << summarize(input)
                  << "-> " << summarize(output) << "]\n";
    });

    // ------------------------------------------------------------------ figure3
    auto* figure3_cmd = app.add_subcommand("figure3", "MS count vs mean classical infidelity");
    std::uint64_t f3_seed = 1, f3_shots = 1024;
    std::size_t f3_pairs = 40;
    std::string f3_noise = "default", f3_out;
    figure3_cmd->add_option("--seed", f3_seed, "dataset + sampling seed");
    figure3_cmd->add_option("--shots", f3_shots, "shots per circuit");
    figure3_cmd->add_option("--pairs", f3_pairs, "train pairs per bucket");
    figure3_cmd->add_option("--noise", f3_noise, "noise spec");
    figure3_cmd->add_option("--out", f3_out, "CSV output path");
    figure3_cmd->callback([&] {
        const NoiseConfig noise = parse_noise_spec(f3_noise);
        if (!noise.enabled) throw config_error("figure3 needs an enabled noise model");
        const auto rows = figure3_table(f3_seed, f3_shots, f3_pairs, noise);
        const std::string text = figure3_to_csv(rows);
        if (f3_out.empty()) {
            std::cout << text;
        } else {
            write_file(f3_out, text);
            std::cout << "wrote " << f3_out << "\n";
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const qsvm::convergence_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNonConvergence;
    } catch (const qsvm::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
}
