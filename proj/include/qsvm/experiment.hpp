#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsvm/data.hpp"
#include "qsvm/kernel.hpp"
#include "qsvm/svm.hpp"

namespace qsvm {

enum class DigitEncoding { Ry, RyCx, Amplitude };

const char* digit_encoding_name(DigitEncoding encoding);
DigitEncoding parse_digit_encoding(const std::string& name);

struct ExperimentConfig {
    std::uint64_t seed = 1;
    std::optional<std::uint64_t> shots;   // nullopt = exact
    NoiseConfig noise = NoiseConfig::off();
    TranspileMode mode = TranspileMode::NonOptimized;
    double C = 1.0;
    double gamma = kDefaultGamma;
    bool pin_diagonal = false;
    int threads = 1;
};

// One Table-row worth of results. The JSON form is fully deterministic for a
// given config (timing is reported on stderr by the CLI, not embedded), and
// embeds provenance: seed, config hash, module versions.
struct ExperimentReport {
    std::string experiment_id;
    std::string subject;              // encoding name or "n=<k>"
    TranspileMode mode = TranspileMode::NonOptimized;
    std::optional<std::uint64_t> shots;
    std::uint64_t seed = 0;
    NoiseConfig noise = NoiseConfig::off();
    double train_accuracy_percent = 0.0;
    double test_accuracy_percent = 0.0;
    double train_distance = 0.0;          // vs the exact Gram
    double test_distance = 0.0;           // vs the exact cross kernel
    std::vector<double> classical_fidelities;   // per train-Gram circuit, noisy runs only
    std::size_t support_vector_count = 0;
    double min_gram_eigenvalue = 0.0;
    std::string config_hash;

    std::string to_json() const;
    std::string human_row() const;
};

ExperimentReport run_digits_experiment(const DigitManifest& manifest, DigitEncoding encoding,
                                       const ExperimentConfig& config);

ExperimentReport run_graphs_experiment(const GraphDataset& dataset,
                                       const ExperimentConfig& config);

// The published grids: digits = 8 rows (3x RY at 2048 shots, non-optimized
// only; 3x RY+CX and 2x amplitude at 1024 shots, both modes), graphs =
// n in {3,4,5} x both modes at 1024 shots.
std::vector<ExperimentReport> run_digits_grid(const DigitManifest& manifest,
                                              const ExperimentConfig& base);
std::vector<ExperimentReport> run_graphs_grid(const ExperimentConfig& base);

struct Figure3Row {
    int ms_gates = 0;
    int n = 0;
    TranspileMode mode = TranspileMode::NonOptimized;
    std::size_t circuits = 0;
    double mean_classical_fidelity = 0.0;
    double mean_infidelity = 0.0;
};

// Mean classical fidelity of graph kernel circuits bucketed by MS-gate count
// (n optimized, 2n non-optimized for n in {3,4,5}), sampled over
// `pairs_per_bucket` random train pairs per bucket.
std::vector<Figure3Row> figure3_table(std::uint64_t seed, std::uint64_t shots,
                                      std::size_t pairs_per_bucket, const NoiseConfig& noise);
std::string figure3_to_csv(const std::vector<Figure3Row>& rows);

// Deterministic manifest derivation: slide a 10-sample window (6 train /
// 4 test) over the retained file-order samples; keep the earliest window
// whose training split has >= 3 samples per class, whose test split has both
// classes, and whose exact-kernel classifier scores 100%/100% under all
// three encodings and both transpilation modes.
DigitManifest derive_digit_manifest(const std::vector<DigitSample>& retained,
                                    const std::string& source_description);

// Mirror-circuit builders shared by experiments, the grid commands and tests.
Circuit digit_encoding_circuit(const DigitSample& sample, DigitEncoding encoding);
PairCircuitBuilder digit_pair_builder(const std::vector<DigitSample>& rows,
                                      const std::vector<DigitSample>& cols,
                                      DigitEncoding encoding, TranspileMode mode);
PairCircuitBuilder graph_pair_builder(const std::vector<LabeledGraph>& rows,
                                      const std::vector<LabeledGraph>& cols, double gamma,
                                      TranspileMode mode);

std::string config_hash(const ExperimentConfig& config, const std::string& extra);

}  // namespace qsvm
