#include "qsvm/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "qsvm/errors.hpp"
#include "qsvm/rng.hpp"
#include "qsvm/transpile.hpp"
#include "qsvm/version.hpp"

namespace qsvm {

const char* digit_encoding_name(DigitEncoding encoding) {
    switch (encoding) {
        case DigitEncoding::Ry: return "ry";
        case DigitEncoding::RyCx: return "rycx";
        case DigitEncoding::Amplitude: return "amplitude";
    }
    return "?";
}

DigitEncoding parse_digit_encoding(const std::string& name) {
    if (name == "ry") return DigitEncoding::Ry;
    if (name == "rycx") return DigitEncoding::RyCx;
    if (name == "amplitude") return DigitEncoding::Amplitude;
    throw config_error("unknown encoding '" + name + "' (expected ry, rycx or amplitude)");
}

Circuit digit_encoding_circuit(const DigitSample& sample, DigitEncoding encoding) {
    switch (encoding) {
        case DigitEncoding::Ry: return encode_ry(digit_features_ry(sample));
        case DigitEncoding::RyCx: return encode_ry_cx(digit_features_ry(sample));
        case DigitEncoding::Amplitude:
            return encode_amplitude(digit_features_amplitude(sample));
    }
    throw config_error("unhandled encoding");
}

PairCircuitBuilder digit_pair_builder(const std::vector<DigitSample>& rows,
                                      const std::vector<DigitSample>& cols,
                                      DigitEncoding encoding, TranspileMode mode) {
    auto row_circuits = std::make_shared<std::vector<Circuit>>();
    auto col_circuits = std::make_shared<std::vector<Circuit>>();
    for (const auto& s : rows) row_circuits->push_back(digit_encoding_circuit(s, encoding));
    for (const auto& s : cols) col_circuits->push_back(digit_encoding_circuit(s, encoding));
    return [row_circuits, col_circuits, mode](std::size_t i, std::size_t j) {
        return mirror_circuit((*row_circuits)[i], (*col_circuits)[j], mode);
    };
}

PairCircuitBuilder graph_pair_builder(const std::vector<LabeledGraph>& rows,
                                      const std::vector<LabeledGraph>& cols, double gamma,
                                      TranspileMode mode) {
    auto row_graphs = std::make_shared<std::vector<GraphInstance>>();
    auto col_graphs = std::make_shared<std::vector<GraphInstance>>();
    for (const auto& g : rows) row_graphs->push_back(g.graph);
    for (const auto& g : cols) col_graphs->push_back(g.graph);
    if (mode == TranspileMode::Optimized) {
        // The adjoint-merged form: one MS per edge, angle difference of the
        // normalized weights; zero-angle edges then drop out.
        return [row_graphs, col_graphs, gamma](std::size_t i, std::size_t j) {
            return optimize(merge_graph_kernel((*col_graphs)[j], (*row_graphs)[i], gamma));
        };
    }
    return [row_graphs, col_graphs, gamma](std::size_t i, std::size_t j) {
        return concat(encode_graph((*col_graphs)[j], gamma),
                      adjoint(encode_graph((*row_graphs)[i], gamma)));
    };
}

namespace {

EstimationMode estimation_mode_for(const ExperimentConfig& config) {
    if (!config.shots) return EstimationMode::exact_mode();
    if (config.noise.enabled) {
        return EstimationMode::noisy_mode(*config.shots, config.seed, config.noise);
    }
    return EstimationMode::shot_mode(*config.shots, config.seed);
}

std::vector<std::string> digit_ids(const std::vector<DigitSample>& samples) {
    std::vector<std::string> ids;
    ids.reserve(samples.size());
    for (const auto& s : samples) ids.push_back(s.id);
    return ids;
}

std::vector<std::string> graph_ids(const std::vector<LabeledGraph>& graphs,
                                   const std::string& prefix) {
    std::vector<std::string> ids;
    ids.reserve(graphs.size());
    for (std::size_t i = 0; i < graphs.size(); ++i) ids.push_back(prefix + std::to_string(i));
    return ids;
}

std::vector<int> labels_of(const std::vector<DigitSample>& samples) {
    std::vector<int> labels;
    for (const auto& s : samples) labels.push_back(s.label);
    return labels;
}

std::vector<int> labels_of(const std::vector<LabeledGraph>& graphs) {
    std::vector<int> labels;
    for (const auto& g : graphs) labels.push_back(g.label);
    return labels;
}

// Classical fidelities of the distinct train-Gram circuits (upper triangle,
// diagonal included), in row-major order. Only meaningful under noise.
std::vector<double> gram_classical_fidelities(const PairCircuitBuilder& builder,
                                              const std::vector<std::string>& ids,
                                              const ExperimentConfig& config) {
    std::vector<double> fidelities;
    if (!config.noise.enabled || !config.shots) return fidelities;
    const std::uint64_t base = mix_seed(config.seed, fnv1a("classical_fidelity"));
    for (std::size_t i = 0; i < ids.size(); ++i) {
        for (std::size_t j = i; j < ids.size(); ++j) {
            const std::uint64_t seed = mix_seed(mix_seed(base, fnv1a(ids[i])), fnv1a(ids[j]));
            fidelities.push_back(
                classical_fidelity(builder(i, j), config.noise, *config.shots, seed));
        }
    }
    return fidelities;
}

ExperimentReport run_generic(const std::string& experiment_id, const std::string& subject,
                             const PairCircuitBuilder& train_builder,
                             const PairCircuitBuilder& cross_builder,
                             const std::vector<std::string>& train_ids,
                             const std::vector<std::string>& test_ids,
                             const std::vector<int>& train_labels,
                             const std::vector<int>& test_labels,
                             const ExperimentConfig& config) {
    KernelOptions estimated_options;
    estimated_options.mode = estimation_mode_for(config);
    estimated_options.symmetric = true;
    estimated_options.pin_diagonal = config.pin_diagonal;
    estimated_options.threads = config.threads;

    KernelOptions exact_options;
    exact_options.mode = EstimationMode::exact_mode();
    exact_options.symmetric = true;
    exact_options.threads = config.threads;

    const KernelMatrix gram = kernel_matrix(train_ids, train_ids, train_builder,
                                            estimated_options);
    KernelMatrix gram_exact = gram;
    if (!estimated_options.mode.exact) {
        gram_exact = kernel_matrix(train_ids, train_ids, train_builder, exact_options);
    }

    KernelOptions cross_estimated = estimated_options;
    cross_estimated.symmetric = false;
    KernelOptions cross_exact = exact_options;
    cross_exact.symmetric = false;
    const KernelMatrix cross = kernel_matrix(test_ids, train_ids, cross_builder,
                                             cross_estimated);
    KernelMatrix cross_exact_matrix = cross;
    if (!cross_estimated.mode.exact) {
        cross_exact_matrix = kernel_matrix(test_ids, train_ids, cross_builder, cross_exact);
    }

    TrainDiagnostics diagnostics;
    const SvmModel model = train(gram, train_labels, config.C, &diagnostics);

    ExperimentReport report;
    report.experiment_id = experiment_id;
    report.subject = subject;
    report.mode = config.mode;
    report.shots = config.shots;
    report.seed = config.seed;
    report.noise = config.noise;
    report.train_accuracy_percent = 100.0 * accuracy(model, gram, train_labels);
    report.test_accuracy_percent = 100.0 * accuracy(model, cross, test_labels);
    report.train_distance = matrix_distance(gram, gram_exact);
    report.test_distance = matrix_distance(cross, cross_exact_matrix);
    report.classical_fidelities = gram_classical_fidelities(train_builder, train_ids, config);
    report.support_vector_count = model.support_indices.size();
    report.min_gram_eigenvalue = diagnostics.min_gram_eigenvalue;
    report.config_hash = config_hash(config, experiment_id);
    return report;
}

}  // namespace

ExperimentReport run_digits_experiment(const DigitManifest& manifest, DigitEncoding encoding,
                                       const ExperimentConfig& config) {
    if (manifest.train.empty() || manifest.test.empty()) {
        throw data_error("digit manifest is missing a train or test split");
    }
    const std::string id = std::string("digits/") + digit_encoding_name(encoding) + "/" +
                           transpile_mode_name(config.mode);
    return run_generic(id, digit_encoding_name(encoding),
                       digit_pair_builder(manifest.train, manifest.train, encoding, config.mode),
                       digit_pair_builder(manifest.test, manifest.train, encoding, config.mode),
                       digit_ids(manifest.train), digit_ids(manifest.test),
                       labels_of(manifest.train), labels_of(manifest.test), config);
}

ExperimentReport run_graphs_experiment(const GraphDataset& dataset,
                                       const ExperimentConfig& config) {
    if (dataset.train.empty() || dataset.test.empty()) {
        throw data_error("graph dataset is missing a train or test split");
    }
    const std::string id = "graphs/n" + std::to_string(dataset.n) + "/" +
                           transpile_mode_name(config.mode);
    return run_generic(
        id, "n=" + std::to_string(dataset.n),
        graph_pair_builder(dataset.train, dataset.train, config.gamma, config.mode),
        graph_pair_builder(dataset.test, dataset.train, config.gamma, config.mode),
        graph_ids(dataset.train, "train"), graph_ids(dataset.test, "test"),
        labels_of(dataset.train), labels_of(dataset.test), config);
}

std::vector<ExperimentReport> run_digits_grid(const DigitManifest& manifest,
                                              const ExperimentConfig& base) {
    // Published grid: three RY repeats at 2048 shots (non-optimized only; the
    // optimized form differs only trivially there), three RY+CX and two
    // amplitude repeats at 1024 shots in both modes.
    std::vector<ExperimentReport> reports;
    auto run_row = [&](DigitEncoding encoding, std::uint64_t shots, int repeat,
                       TranspileMode mode) {
        ExperimentConfig config = base;
        config.mode = mode;
        config.shots = shots;
        config.seed = mix_seed(base.seed, fnv1a(std::string(digit_encoding_name(encoding)) +
                                                "/rep" + std::to_string(repeat)));
        ExperimentReport report = run_digits_experiment(manifest, encoding, config);
        report.experiment_id += "/rep" + std::to_string(repeat);
        reports.push_back(std::move(report));
    };
    for (int rep = 1; rep <= 3; ++rep) run_row(DigitEncoding::Ry, 2048, rep, TranspileMode::NonOptimized);
    for (int rep = 1; rep <= 3; ++rep) {
        run_row(DigitEncoding::RyCx, 1024, rep, TranspileMode::NonOptimized);
        run_row(DigitEncoding::RyCx, 1024, rep, TranspileMode::Optimized);
    }
    for (int rep = 1; rep <= 2; ++rep) {
        run_row(DigitEncoding::Amplitude, 1024, rep, TranspileMode::NonOptimized);
        run_row(DigitEncoding::Amplitude, 1024, rep, TranspileMode::Optimized);
    }
    return reports;
}

std::vector<ExperimentReport> run_graphs_grid(const ExperimentConfig& base) {
    std::vector<ExperimentReport> reports;
    for (int n : {3, 4, 5}) {
        const GraphDataset dataset =
            generate_graph_dataset(n, 20, 10, mix_seed(base.seed, static_cast<std::uint64_t>(n)));
        for (TranspileMode mode : {TranspileMode::NonOptimized, TranspileMode::Optimized}) {
            ExperimentConfig config = base;
            config.mode = mode;
            if (!config.shots) config.shots = 1024;
            reports.push_back(run_graphs_experiment(dataset, config));
        }
    }
    return reports;
}

std::vector<Figure3Row> figure3_table(std::uint64_t seed, std::uint64_t shots,
                                      std::size_t pairs_per_bucket, const NoiseConfig& noise) {
    std::vector<Figure3Row> rows;
    for (TranspileMode mode : {TranspileMode::Optimized, TranspileMode::NonOptimized}) {
        for (int n : {3, 4, 5}) {
            const GraphDataset dataset =
                generate_graph_dataset(n, 20, 10, mix_seed(seed, static_cast<std::uint64_t>(n)));
            const PairCircuitBuilder builder =
                graph_pair_builder(dataset.train, dataset.train, kDefaultGamma, mode);

            // Deterministic pair subset: distinct (i < j) pairs shuffled by a
            // seeded Fisher-Yates, first pairs_per_bucket taken.
            std::vector<std::pair<std::size_t, std::size_t>> pairs;
            for (std::size_t i = 0; i < dataset.train.size(); ++i) {
                for (std::size_t j = i + 1; j < dataset.train.size(); ++j) {
                    pairs.emplace_back(i, j);
                }
            }
            Rng shuffle_rng(mix_seed(seed, fnv1a("figure3/n" + std::to_string(n))));
            for (std::size_t k = pairs.size(); k > 1; --k) {
                const std::size_t swap_with =
                    static_cast<std::size_t>(shuffle_rng.uniform() * static_cast<double>(k));
                std::swap(pairs[k - 1], pairs[std::min(swap_with, k - 1)]);
            }
            if (pairs.size() > pairs_per_bucket) pairs.resize(pairs_per_bucket);

            double fidelity_sum = 0.0;
            const std::uint64_t base = mix_seed(seed, fnv1a("figure3/fcl"));
            for (const auto& [i, j] : pairs) {
                const std::uint64_t pair_seed =
                    mix_seed(mix_seed(base, static_cast<std::uint64_t>(n) * 1000 + i), j);
                fidelity_sum += classical_fidelity(builder(i, j), noise, shots, pair_seed);
            }

            Figure3Row row;
            row.n = n;
            row.mode = mode;
            row.ms_gates = mode == TranspileMode::Optimized ? n : 2 * n;
            row.circuits = pairs.size();
            row.mean_classical_fidelity = fidelity_sum / static_cast<double>(pairs.size());
            row.mean_infidelity = 1.0 - row.mean_classical_fidelity;
            rows.push_back(row);
        }
    }
    std::sort(rows.begin(), rows.end(),
              [](const Figure3Row& a, const Figure3Row& b) { return a.ms_gates < b.ms_gates; });
    return rows;
}

std::string figure3_to_csv(const std::vector<Figure3Row>& rows) {
    std::ostringstream out;
    out << "ms_gates,n,mode,circuits,mean_classical_fidelity,mean_infidelity\n";
    for (const auto& row : rows) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "%d,%d,%s,%zu,%.10f,%.10f\n", row.ms_gates, row.n,
                      transpile_mode_name(row.mode), row.circuits, row.mean_classical_fidelity,
                      row.mean_infidelity);
        out << buf;
    }
    return out.str();
}

DigitManifest derive_digit_manifest(const std::vector<DigitSample>& retained,
                                    const std::string& source_description) {
    if (retained.size() < 10) {
        throw data_error("manifest derivation needs at least 10 retained samples");
    }
    for (std::size_t start = 0; start + 10 <= retained.size(); ++start) {
        DigitManifest candidate;
        candidate.train.assign(retained.begin() + static_cast<std::ptrdiff_t>(start),
                               retained.begin() + static_cast<std::ptrdiff_t>(start) + 6);
        candidate.test.assign(retained.begin() + static_cast<std::ptrdiff_t>(start) + 6,
                              retained.begin() + static_cast<std::ptrdiff_t>(start) + 10);
        const auto count = [](const std::vector<DigitSample>& v, int label) {
            return std::count_if(v.begin(), v.end(),
                                 [&](const DigitSample& s) { return s.label == label; });
        };
        if (count(candidate.train, +1) < 3 || count(candidate.train, -1) < 3) continue;
        if (count(candidate.test, +1) == 0 || count(candidate.test, -1) == 0) continue;

        bool all_perfect = true;
        for (DigitEncoding encoding :
             {DigitEncoding::Ry, DigitEncoding::RyCx, DigitEncoding::Amplitude}) {
            for (TranspileMode mode : {TranspileMode::NonOptimized, TranspileMode::Optimized}) {
                ExperimentConfig config;
                config.mode = mode;
                const ExperimentReport report =
                    run_digits_experiment(candidate, encoding, config);
                if (report.train_accuracy_percent != 100.0 ||
                    report.test_accuracy_percent != 100.0) {
                    all_perfect = false;
                    break;
                }
            }
            if (!all_perfect) break;
        }
        if (all_perfect) {
            candidate.source = source_description;
            return candidate;
        }
    }
    throw data_error("no 10-sample window reaches 100%/100% under all encodings");
}

std::string config_hash(const ExperimentConfig& config, const std::string& extra) {
    std::ostringstream canonical;
    canonical << "seed=" << config.seed << ";shots=" << (config.shots ? *config.shots : 0)
              << ";mode=" << transpile_mode_name(config.mode) << ";C=" << config.C
              << ";gamma=" << config.gamma << ";pin=" << config.pin_diagonal
              << ";noise=" << config.noise.enabled << "," << config.noise.p_1q << ","
              << config.noise.p_ms_base << "," << config.noise.ms_chi_slope << ","
              << config.noise.p_readout << ";" << extra;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(canonical.str())));
    return buf;
}

namespace {

nlohmann::json noise_json(const NoiseConfig& cfg) {
    return {{"enabled", cfg.enabled},         {"p_1q", cfg.p_1q},
            {"p_ms_base", cfg.p_ms_base},     {"ms_chi_slope", cfg.ms_chi_slope},
            {"p_readout", cfg.p_readout}};
}

}  // namespace

std::string ExperimentReport::to_json() const {
    nlohmann::json j;
    j["experiment_id"] = experiment_id;
    j["subject"] = subject;
    j["mode"] = transpile_mode_name(mode);
    if (shots) {
        j["shots"] = *shots;
    } else {
        j["shots"] = "exact";
    }
    j["seed"] = seed;
    j["noise"] = noise_json(noise);
    j["train_accuracy_percent"] = train_accuracy_percent;
    j["test_accuracy_percent"] = test_accuracy_percent;
    j["train_distance"] = train_distance;
    j["test_distance"] = test_distance;
    j["classical_fidelities"] = classical_fidelities;
    j["support_vector_count"] = support_vector_count;
    j["min_gram_eigenvalue"] = min_gram_eigenvalue;
    j["provenance"] = {
        {"toolkit_version", kToolkitVersion},
        {"module_versions", module_versions()},
        {"config_hash", config_hash},
        {"seed", seed},
    };
    return j.dump(2) + "\n";
}

std::string ExperimentReport::human_row() const {
    char buf[256];
    const std::string shots_text = shots ? std::to_string(*shots) : "exact";
    std::snprintf(buf, sizeof buf, "%-28s %-7s %-6s train %6.1f%% (%.4f)  test %6.1f%% (%.4f)",
                  experiment_id.c_str(), shots_text.c_str(), transpile_mode_name(mode),
                  train_accuracy_percent, train_distance, test_accuracy_percent, test_distance);
    return buf;
}

}  // namespace qsvm
