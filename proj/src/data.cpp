#include "qsvm/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "qsvm/errors.hpp"
#include "qsvm/rng.hpp"
#include "qsvm/statevector.hpp"

namespace qsvm {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kDegeneracyTol = 1e-9;
constexpr int kMaxIntensity = 16;   // Optdigits intensity maximum; gives the [0,1] scale

int parse_int_field(const std::string& token, std::size_t line) {
    int value = 0;
    std::string trimmed = token;
    trimmed.erase(0, trimmed.find_first_not_of(" \t\r"));
    trimmed.erase(trimmed.find_last_not_of(" \t\r") + 1);
    const auto [ptr, ec] =
        std::from_chars(trimmed.data(), trimmed.data() + trimmed.size(), value);
    if (ec != std::errc{} || ptr != trimmed.data() + trimmed.size()) {
        throw parse_error("invalid integer field '" + token + "'", line);
    }
    return value;
}

}  // namespace

std::vector<DigitSample> parse_optdigits(std::istream& in, int class_a_digit,
                                         int class_b_digit) {
    std::vector<DigitSample> samples;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<int> fields;
        fields.reserve(65);
        std::stringstream row(line);
        std::string token;
        while (std::getline(row, token, ',')) {
            fields.push_back(parse_int_field(token, line_number));
        }
        if (fields.size() != 65) {
            throw parse_error("expected 65 comma-separated fields, got " +
                                  std::to_string(fields.size()),
                              line_number);
        }
        const int digit = fields[64];
        if (digit != class_a_digit && digit != class_b_digit) continue;

        DigitSample sample;
        for (int r = 0; r < 8; ++r) {
            for (int c = 0; c < 8; ++c) {
                const int value = fields[static_cast<std::size_t>(r) * 8 + c];
                if (value < 0 || value > kMaxIntensity) {
                    throw parse_error("pixel intensity " + std::to_string(value) +
                                          " outside the 0..16 range",
                                      line_number);
                }
                sample.pixels[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = value;
            }
        }
        sample.label = digit == class_a_digit ? +1 : -1;
        sample.id = "line" + std::to_string(line_number);
        samples.push_back(std::move(sample));
    }
    return samples;
}

std::vector<DigitSample> load_optdigits(const std::string& path, int class_a_digit,
                                        int class_b_digit) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open optdigits file: " + path);
    return parse_optdigits(in, class_a_digit, class_b_digit);
}

RyAngles digit_features_ry(const DigitSample& sample) {
    auto angle = [&](int r, int c) {
        return kPi * sample.pixels[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] /
               kMaxIntensity;
    };
    return {angle(3, 3), angle(3, 4), angle(4, 3), angle(4, 4)};
}

AmplitudeInput digit_features_amplitude(const DigitSample& sample) {
    auto scaled = [&](int r, int c) {
        return static_cast<double>(
                   sample.pixels[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]) /
               kMaxIntensity;
    };
    return {scaled(3, 3), scaled(3, 4), scaled(4, 4), 0.25};
}

std::vector<double> ising_spectrum(const GraphInstance& g) {
    g.validate();
    if (g.n > kMaxQubits) {
        throw resource_error("spectrum enumeration capped at " + std::to_string(kMaxQubits) +
                             " vertices");
    }
    const std::size_t dim = std::size_t{1} << g.n;
    std::vector<double> energies(dim, 0.0);
    for (std::size_t x = 0; x < dim; ++x) {
        double energy = 0.0;
        for (int j = 0; j < g.n; ++j) {
            const int zj = ((x >> (g.n - 1 - j)) & 1) ? -1 : +1;
            for (int k = j + 1; k < g.n; ++k) {
                const double w = g.weight(j, k);
                if (w == 0.0) continue;
                const int zk = ((x >> (g.n - 1 - k)) & 1) ? -1 : +1;
                energy += w * zj * zk;
            }
        }
        energies[x] = energy;
    }
    return energies;
}

SpectrumLabelRule standard_label_rule(int n) {
    SpectrumLabelRule rule;
    rule.n = n;
    switch (n) {
        case 3:
            rule.positive = {"000", "111"};
            rule.negative = {"100", "011", "010", "101", "001", "110"};
            return rule;
        case 4:
            rule.positive = {"0000", "1111"};
            rule.negative = {"0101", "1010"};
            return rule;
        case 5:
            rule.positive = {"00000", "11111"};
            rule.negative = {"01010", "10101"};
            return rule;
        default: throw config_error("no label rule defined for n=" + std::to_string(n));
    }
}

namespace {

// The s lowest-energy bitstrings, or nullopt when the boundary between the
// s-th and (s+1)-th levels is degenerate.
std::optional<std::set<std::string>> lowest_levels(const std::vector<double>& energies, int n,
                                                   std::size_t s) {
    std::vector<std::size_t> order(energies.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return energies[a] < energies[b]; });
    if (s >= order.size()) return std::nullopt;
    if (energies[order[s]] - energies[order[s - 1]] <= kDegeneracyTol) return std::nullopt;
    std::set<std::string> lowest;
    for (std::size_t i = 0; i < s; ++i) lowest.insert(index_to_bitstring(order[i], n));
    return lowest;
}

}  // namespace

GraphLabel label_graph(const GraphInstance& g, const SpectrumLabelRule& rule) {
    if (g.n != rule.n) throw shape_error("label rule is for a different vertex count");
    const std::vector<double> energies = ising_spectrum(g);
    if (const auto lowest = lowest_levels(energies, g.n, rule.positive.size());
        lowest && *lowest == rule.positive) {
        return GraphLabel::Positive;
    }
    if (const auto lowest = lowest_levels(energies, g.n, rule.negative.size());
        lowest && *lowest == rule.negative) {
        return GraphLabel::Negative;
    }
    return GraphLabel::Reject;
}

GraphDataset generate_graph_dataset(int n, int count_train, int count_test,
                                    std::uint64_t seed) {
    const SpectrumLabelRule rule = standard_label_rule(n);
    GraphDataset dataset;
    dataset.n = n;
    dataset.seed = seed;

    Rng rng(seed);
    const long max_attempts = 1000000;
    long attempts = 0;
    std::vector<double> edge_weights(static_cast<std::size_t>(n));
    const int total = count_train + count_test;

    while (static_cast<int>(dataset.train.size() + dataset.test.size()) < total) {
        if (++attempts > max_attempts) {
            throw generation_error("graph generation exhausted " +
                                   std::to_string(max_attempts) + " attempts for n=" +
                                   std::to_string(n));
        }
        for (double& w : edge_weights) w = rng.normal();
        GraphInstance g = GraphInstance::ring(edge_weights);
        const GraphLabel label = label_graph(g, rule);
        if (label == GraphLabel::Reject) continue;
        LabeledGraph labeled{std::move(g), label == GraphLabel::Positive ? +1 : -1};
        if (static_cast<int>(dataset.train.size()) < count_train) {
            dataset.train.push_back(std::move(labeled));
        } else {
            dataset.test.push_back(std::move(labeled));
        }
    }

    const bool has_positive = std::any_of(dataset.train.begin(), dataset.train.end(),
                                          [](const LabeledGraph& g) { return g.label > 0; });
    const bool has_negative = std::any_of(dataset.train.begin(), dataset.train.end(),
                                          [](const LabeledGraph& g) { return g.label < 0; });
    if (!has_positive || !has_negative) {
        throw generation_error("training split for n=" + std::to_string(n) +
                               " ended up single-class; refusing to emit it");
    }
    return dataset;
}

namespace {

nlohmann::json graph_to_json(const LabeledGraph& labeled) {
    nlohmann::json edges = nlohmann::json::array();
    for (int j = 0; j < labeled.graph.n; ++j) {
        for (int k = j + 1; k < labeled.graph.n; ++k) {
            if (labeled.graph.weight(j, k) != 0.0) {
                edges.push_back({j, k, labeled.graph.weight(j, k)});
            }
        }
    }
    return {{"n", labeled.graph.n}, {"edges", edges}, {"label", labeled.label}};
}

LabeledGraph graph_from_json(const nlohmann::json& j) {
    LabeledGraph labeled;
    labeled.graph = GraphInstance(j.at("n").get<int>());
    for (const auto& edge : j.at("edges")) {
        labeled.graph.set_weight(edge.at(0).get<int>(), edge.at(1).get<int>(),
                                 edge.at(2).get<double>());
    }
    labeled.label = j.at("label").get<int>();
    return labeled;
}

int count_labels(const std::vector<LabeledGraph>& graphs, int label) {
    return static_cast<int>(std::count_if(graphs.begin(), graphs.end(),
                                          [&](const LabeledGraph& g) { return g.label == label; }));
}

}  // namespace

std::string graph_dataset_to_json(const GraphDataset& dataset) {
    nlohmann::json j;
    j["n"] = dataset.n;
    j["seed"] = dataset.seed;
    j["train"] = nlohmann::json::array();
    j["test"] = nlohmann::json::array();
    for (const auto& g : dataset.train) j["train"].push_back(graph_to_json(g));
    for (const auto& g : dataset.test) j["test"].push_back(graph_to_json(g));
    // Balance is not enforced; record the per-class counts instead.
    j["class_counts"] = {
        {"train", {{"+1", count_labels(dataset.train, +1)}, {"-1", count_labels(dataset.train, -1)}}},
        {"test", {{"+1", count_labels(dataset.test, +1)}, {"-1", count_labels(dataset.test, -1)}}},
    };
    return j.dump(2) + "\n";
}

GraphDataset graph_dataset_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    GraphDataset dataset;
    dataset.n = j.at("n").get<int>();
    dataset.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& g : j.at("train")) dataset.train.push_back(graph_from_json(g));
    for (const auto& g : j.at("test")) dataset.test.push_back(graph_from_json(g));
    return dataset;
}

namespace {

nlohmann::json sample_to_json(const DigitSample& sample) {
    nlohmann::json pixels = nlohmann::json::array();
    for (const auto& row : sample.pixels) {
        pixels.push_back(std::vector<int>(row.begin(), row.end()));
    }
    return {{"id", sample.id}, {"label", sample.label}, {"pixels", pixels}};
}

DigitSample sample_from_json(const nlohmann::json& j) {
    DigitSample sample;
    sample.id = j.at("id").get<std::string>();
    sample.label = j.at("label").get<int>();
    const auto& pixels = j.at("pixels");
    if (pixels.size() != 8) throw data_error("digit sample must have 8 pixel rows");
    for (std::size_t r = 0; r < 8; ++r) {
        if (pixels[r].size() != 8) throw data_error("digit sample rows must have 8 pixels");
        for (std::size_t c = 0; c < 8; ++c) sample.pixels[r][c] = pixels[r][c].get<int>();
    }
    return sample;
}

}  // namespace

std::string digit_manifest_to_json(const DigitManifest& manifest) {
    nlohmann::json j;
    j["source"] = manifest.source;
    j["train"] = nlohmann::json::array();
    j["test"] = nlohmann::json::array();
    for (const auto& s : manifest.train) j["train"].push_back(sample_to_json(s));
    for (const auto& s : manifest.test) j["test"].push_back(sample_to_json(s));
    return j.dump(2) + "\n";
}

DigitManifest digit_manifest_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    DigitManifest manifest;
    manifest.source = j.at("source").get<std::string>();
    for (const auto& s : j.at("train")) manifest.train.push_back(sample_from_json(s));
    for (const auto& s : j.at("test")) manifest.test.push_back(sample_from_json(s));
    return manifest;
}

DigitManifest load_digit_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open digit manifest: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return digit_manifest_from_json(text);
}

}  // namespace qsvm
