#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "qsvm/encodings.hpp"
#include "qsvm/graph.hpp"

namespace qsvm {

// One Optdigits record: an 8x8 grid of intensities 0..16 plus the binary
// class label (+1 for digit 0, -1 for digit 1; mapping fixed here).
struct DigitSample {
    std::array<std::array<int, 8>, 8> pixels{};
    int label = 0;
    std::string id;
};

// Reads the 64-intensities-plus-class CSV layout, keeping only the two
// requested digit classes in file order. Parse failures carry line numbers.
std::vector<DigitSample> load_optdigits(const std::string& path, int class_a_digit = 0,
                                        int class_b_digit = 1);
std::vector<DigitSample> parse_optdigits(std::istream& in, int class_a_digit = 0,
                                         int class_b_digit = 1);

// Central pixels (3,3),(3,4),(4,3),(4,4) — zero-based (row, column) — scaled
// by 1/16 and multiplied by pi.
RyAngles digit_features_ry(const DigitSample& sample);

// Central pixels (3,3),(3,4),(4,4) scaled by 1/16, padded with 0.25.
AmplitudeInput digit_features_amplitude(const DigitSample& sample);

// Brute-force diagonal spectrum E_x = sum_{j<k} g_jk z_j z_k with z = +1 for
// bit 0 and -1 for bit 1, indexed by basis state under the global bit order.
std::vector<double> ising_spectrum(const GraphInstance& g);

// Class definition: a graph belongs to a class when the |set| lowest-energy
// levels of its spectrum are exactly that set. Both sets are closed under
// all-bits inversion since E_x = E_inv(x).
struct SpectrumLabelRule {
    int n = 0;
    std::set<std::string> positive;
    std::set<std::string> negative;
};

// Built-in rules for n = 3, 4, 5.
SpectrumLabelRule standard_label_rule(int n);

enum class GraphLabel { Positive, Negative, Reject };

// Reject covers both "matches neither set" and a degenerate set boundary
// (gap <= 1e-9 between the s-th and (s+1)-th energies).
GraphLabel label_graph(const GraphInstance& g, const SpectrumLabelRule& rule);

struct LabeledGraph {
    GraphInstance graph;
    int label = 0;   // +1 / -1
};

struct GraphDataset {
    int n = 0;
    std::uint64_t seed = 0;
    std::vector<LabeledGraph> train;
    std::vector<LabeledGraph> test;
};

// Rejection-samples ring graphs with N(0,1) edge weights until both splits
// are filled. Class balance is not enforced, but a training split missing a
// class (or exhausting 10^6 attempts) aborts with generation_error.
GraphDataset generate_graph_dataset(int n, int count_train, int count_test, std::uint64_t seed);

std::string graph_dataset_to_json(const GraphDataset& dataset);
GraphDataset graph_dataset_from_json(const std::string& text);

// The pinned digit dataset of record: ids, pixels and the 6/4 split.
struct DigitManifest {
    std::vector<DigitSample> train;
    std::vector<DigitSample> test;
    std::string source;
};

std::string digit_manifest_to_json(const DigitManifest& manifest);
DigitManifest digit_manifest_from_json(const std::string& text);
DigitManifest load_digit_manifest(const std::string& path);

}  // namespace qsvm
