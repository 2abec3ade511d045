#include <doctest.h>

#include <cmath>
#include <sstream>

#include "qsvm/data.hpp"
#include "qsvm/errors.hpp"
#include "qsvm/rng.hpp"
#include "qsvm/statevector.hpp"

using namespace qsvm;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string optdigits_line(int fill_value, int digit) {
    std::string line;
    for (int i = 0; i < 64; ++i) line += std::to_string(fill_value) + ",";
    line += std::to_string(digit);
    return line;
}

GraphInstance random_ring(int n, Rng& rng) {
    std::vector<double> weights(static_cast<std::size_t>(n));
    for (auto& w : weights) w = rng.normal();
    return GraphInstance::ring(weights);
}

}  // namespace

TEST_CASE("optdigits parsing") {
    SUBCASE("labels map digit 0 to +1 and digit 1 to -1, keeping file order") {
        std::istringstream in(optdigits_line(0, 0) + "\n" + optdigits_line(3, 1) + "\n" +
                              optdigits_line(2, 0) + "\n");
        const auto samples = parse_optdigits(in);
        REQUIRE(samples.size() == 3);
        CHECK(samples[0].label == +1);
        CHECK(samples[0].pixels[0][0] == 0);
        CHECK(samples[1].label == -1);
        CHECK(samples[1].pixels[7][7] == 3);
        CHECK(samples[2].id == "line3");
    }
    SUBCASE("other digits are filtered out") {
        std::istringstream in(optdigits_line(5, 7) + "\n" + optdigits_line(5, 9) + "\n");
        CHECK(parse_optdigits(in).empty());
    }
    SUBCASE("malformed rows report their line number") {
        std::istringstream in(optdigits_line(0, 0) + "\n1,2,3\n");
        try {
            parse_optdigits(in);
            FAIL("expected parse_error");
        } catch (const parse_error& e) {
            CHECK(e.line_number == 2);
        }
    }
    SUBCASE("intensities outside 0..16 are rejected") {
        std::istringstream in(optdigits_line(17, 0));
        CHECK_THROWS_AS(parse_optdigits(in), parse_error);
    }
    SUBCASE("missing file") { CHECK_THROWS_AS(load_optdigits("/nonexistent.csv"), data_error); }
}

TEST_CASE("digit feature extraction") {
    DigitSample blank;
    blank.label = +1;
    SUBCASE("blank image gives zero angles and the bare pad") {
        const RyAngles angles = digit_features_ry(blank);
        for (double a : angles) CHECK(a == 0.0);
        const AmplitudeInput amp = digit_features_amplitude(blank);
        CHECK(amp == AmplitudeInput{0, 0, 0, 0.25});
        const auto normalized = normalize_amplitude_input(amp);
        CHECK(normalized[3] == 1.0);   // the pad guarantees a nonzero norm
    }
    SUBCASE("saturated image gives pi angles") {
        DigitSample full = blank;
        for (auto& row : full.pixels) row.fill(16);
        const RyAngles angles = digit_features_ry(full);
        for (double a : angles) CHECK(a == doctest::Approx(kPi).epsilon(1e-15));
        CHECK(digit_features_amplitude(full) == AmplitudeInput{1, 1, 1, 0.25});
    }
    SUBCASE("coordinates are zero-based (row, column) and order is fixed") {
        DigitSample s = blank;
        s.pixels[3][3] = 8;
        const RyAngles angles = digit_features_ry(s);
        CHECK(angles[0] == doctest::Approx(kPi / 2.0).epsilon(1e-15));
        CHECK(angles[1] == 0.0);
        CHECK(angles[2] == 0.0);
        CHECK(angles[3] == 0.0);

        s.pixels[3][3] = 0;
        s.pixels[4][3] = 16;
        CHECK(digit_features_ry(s)[2] == doctest::Approx(kPi).epsilon(1e-15));
        // The amplitude path reads (3,3), (3,4), (4,4): pixel (4,3) is unused.
        CHECK(digit_features_amplitude(s) == AmplitudeInput{0, 0, 0, 0.25});
    }
    SUBCASE("extraction is pure") {
        DigitSample s = blank;
        s.pixels[3][4] = 7;
        const RyAngles first = digit_features_ry(s);
        const RyAngles second = digit_features_ry(s);
        CHECK(first == second);
    }
}

TEST_CASE("Ising spectrum enumeration") {
    SUBCASE("unit triangle, hand-enumerated") {
        GraphInstance g(3);
        g.set_weight(0, 1, 1.0);
        g.set_weight(1, 2, 1.0);
        g.set_weight(0, 2, 1.0);
        const std::vector<double> e = ising_spectrum(g);
        CHECK(e[bitstring_to_index("000")] == 3.0);
        CHECK(e[bitstring_to_index("111")] == 3.0);
        for (const char* bits : {"001", "010", "100", "011", "101", "110"}) {
            CHECK(e[bitstring_to_index(bits)] == -1.0);
        }
    }
    SUBCASE("all-zero weights give a flat spectrum") {
        const std::vector<double> e = ising_spectrum(GraphInstance(4));
        for (double v : e) CHECK(v == 0.0);
    }
    SUBCASE("bit-inversion symmetry holds for 1000 random graphs") {
        Rng rng(13);
        for (int n : {3, 4, 5, 6}) {
            for (int trial = 0; trial < 250; ++trial) {
                const std::vector<double> e = ising_spectrum(random_ring(n, rng));
                const std::size_t mask = (std::size_t{1} << n) - 1;
                for (std::size_t x = 0; x < e.size(); ++x) {
                    CHECK(e[x] == doctest::Approx(e[x ^ mask]).epsilon(1e-12));
                }
            }
        }
    }
    SUBCASE("a bit-flip local search never beats the enumerated minimum") {
        Rng rng(14);
        for (int trial = 0; trial < 30; ++trial) {
            const GraphInstance g = random_ring(5, rng);
            const std::vector<double> e = ising_spectrum(g);
            const double global_min = *std::min_element(e.begin(), e.end());
            std::size_t x = static_cast<std::size_t>(rng.uniform() * 32.0) % 32;
            for (int step = 0; step < 100; ++step) {
                std::size_t best = x;
                for (int b = 0; b < 5; ++b) {
                    const std::size_t y = x ^ (std::size_t{1} << b);
                    if (e[y] < e[best]) best = y;
                }
                if (best == x) break;
                x = best;
            }
            CHECK(e[x] >= global_min);
        }
    }
}

TEST_CASE("graph labeling rules") {
    SUBCASE("ferromagnetic triangle is the positive class") {
        GraphInstance g(3);
        g.set_weight(0, 1, -1.0);
        g.set_weight(1, 2, -1.0);
        g.set_weight(0, 2, -1.0);
        CHECK(label_graph(g, standard_label_rule(3)) == GraphLabel::Positive);
    }
    SUBCASE("antiferromagnetic triangle is the negative class") {
        GraphInstance g(3);
        g.set_weight(0, 1, 1.0);
        g.set_weight(1, 2, 1.0);
        g.set_weight(0, 2, 1.0);
        CHECK(label_graph(g, standard_label_rule(3)) == GraphLabel::Negative);
    }
    SUBCASE("alternating four-ring minimizes the staggered strings") {
        const GraphInstance g = GraphInstance::ring(std::vector<double>{1, 1, 1, 1});
        CHECK(label_graph(g, standard_label_rule(4)) == GraphLabel::Negative);
    }
    SUBCASE("minima outside both sets are rejected") {
        const GraphInstance g = GraphInstance::ring(std::vector<double>{-1, 1, -1, 1});
        // Ground pair is {0011, 1100}: neither rule set.
        CHECK(label_graph(g, standard_label_rule(4)) == GraphLabel::Reject);
    }
    SUBCASE("rules for other sizes are undefined") {
        CHECK_THROWS_AS(standard_label_rule(6), config_error);
    }
    SUBCASE("the n=3 negative set holds the six distinct non-uniform strings") {
        const SpectrumLabelRule rule = standard_label_rule(3);
        CHECK(rule.negative.size() == 6);
        CHECK(rule.positive.size() == 2);
    }
}

TEST_CASE("graph dataset generation") {
    SUBCASE("fixed seeds regenerate byte-identical datasets") {
        const GraphDataset a = generate_graph_dataset(3, 20, 10, 42);
        const GraphDataset b = generate_graph_dataset(3, 20, 10, 42);
        CHECK(graph_dataset_to_json(a) == graph_dataset_to_json(b));
        const GraphDataset c = generate_graph_dataset(3, 20, 10, 43);
        CHECK(graph_dataset_to_json(a) != graph_dataset_to_json(c));
    }
    SUBCASE("emitted labels re-derive through the rule") {
        for (int n : {3, 4, 5}) {
            const GraphDataset ds = generate_graph_dataset(n, 20, 10, 7);
            CHECK(ds.train.size() == 20);
            CHECK(ds.test.size() == 10);
            const SpectrumLabelRule rule = standard_label_rule(n);
            for (const auto& labeled : ds.train) {
                const GraphLabel expected =
                    labeled.label > 0 ? GraphLabel::Positive : GraphLabel::Negative;
                CHECK(label_graph(labeled.graph, rule) == expected);
            }
        }
    }
    SUBCASE("both classes appear among accepted three-vertex graphs") {
        Rng rng(100);
        int positive = 0, negative = 0;
        const SpectrumLabelRule rule = standard_label_rule(3);
        for (int trial = 0; trial < 10000; ++trial) {
            switch (label_graph(random_ring(3, rng), rule)) {
                case GraphLabel::Positive: ++positive; break;
                case GraphLabel::Negative: ++negative; break;
                case GraphLabel::Reject: break;
            }
        }
        CHECK(positive > 0);
        CHECK(negative > 0);
    }
    SUBCASE("JSON round trip") {
        const GraphDataset ds = generate_graph_dataset(4, 5, 3, 9);
        const GraphDataset back = graph_dataset_from_json(graph_dataset_to_json(ds));
        CHECK(back.n == 4);
        CHECK(back.seed == 9);
        REQUIRE(back.train.size() == 5);
        CHECK(back.train[0].label == ds.train[0].label);
        CHECK(back.train[0].graph.weights == ds.train[0].graph.weights);
    }
}

TEST_CASE("digit manifest JSON round trip") {
    DigitManifest manifest;
    DigitSample s;
    s.id = "line4";
    s.label = -1;
    s.pixels[3][3] = 12;
    manifest.train.push_back(s);
    manifest.test.push_back(s);
    manifest.source = "unit-test";
    const DigitManifest back = digit_manifest_from_json(digit_manifest_to_json(manifest));
    CHECK(back.source == "unit-test");
    REQUIRE(back.train.size() == 1);
    CHECK(back.train[0].pixels == s.pixels);
    CHECK(back.test[0].label == -1);
}
