#include <doctest.h>

#include <cmath>

#include "oracle_matrix.hpp"
#include "qsvm/encodings.hpp"
#include "qsvm/errors.hpp"
#include "qsvm/rng.hpp"
#include "qsvm/transpile.hpp"

using namespace qsvm;

namespace {

constexpr double kPi = 3.14159265358979323846;

Circuit random_circuit(int n_qubits, int gate_count, Rng& rng, bool allow_cx = true) {
    Circuit circuit(n_qubits);
    for (int g = 0; g < gate_count; ++g) {
        const double pick = rng.uniform();
        const int q = static_cast<int>(rng.uniform() * n_qubits) % n_qubits;
        const double angle = (rng.uniform() - 0.5) * 4.0 * kPi;
        if (pick < 0.35) {
            circuit.append(Gate::ry(q, angle));
        } else if (pick < 0.6) {
            circuit.append(Gate::rx(q, angle));
        } else if (pick < 0.7) {
            circuit.append(Gate::rphi(q, rng.uniform() * 2.0 * kPi, angle));
        } else if (n_qubits >= 2) {
            int q2 = static_cast<int>(rng.uniform() * n_qubits) % n_qubits;
            if (q2 == q) q2 = (q2 + 1) % n_qubits;
            if (allow_cx && pick < 0.85) {
                circuit.append(Gate::cx(q, q2));
            } else {
                circuit.append(Gate::ms(q, q2, angle / 2.0));
            }
        } else {
            circuit.append(Gate::ry(q, angle));
        }
    }
    return circuit;
}

}  // namespace

TEST_CASE("CX decomposition") {
    SUBCASE("no CX leaves the circuit unchanged") {
        Circuit c(2);
        c.append(Gate::ry(0, 0.4));
        c.append(Gate::ms(0, 1, 0.2));
        const Circuit out = transpile_cx(c);
        CHECK(out.gates == c.gates);
    }
    SUBCASE("the five-gate sequence equals CX up to global phase") {
        Circuit c(2);
        c.append(Gate::cx(0, 1));
        const Circuit native = transpile_cx(c);
        REQUIRE(native.size() == 5);
        CHECK(count_gates(native).at(GateKind::Cx) == 0);
        CHECK(count_gates(native).at(GateKind::Ms) == 1);
        // Direct 4x4 matrix product against the CX definition.
        const oracle::CMat expected = oracle::cx_matrix_2q();
        const oracle::CMat actual = oracle::circuit_unitary_from_matrices(native);
        CHECK(oracle::phase_aligned_distance(expected, actual) < 1e-10);
    }
    SUBCASE("reversed wire order also matches") {
        Circuit c(2);
        c.append(Gate::cx(1, 0));
        const oracle::CMat expected = oracle::circuit_unitary_from_matrices(c);
        const oracle::CMat actual = oracle::circuit_unitary_from_matrices(transpile_cx(c));
        CHECK(oracle::phase_aligned_distance(expected, actual) < 1e-10);
    }
    SUBCASE("the four-qubit RY+CX encoding becomes 2 MS plus 8 extra rotations") {
        const Circuit encoded = encode_ry_cx({0.3, 0.7, 1.1, 2.9});
        const Circuit native = transpile_cx(encoded);
        const auto counts = count_gates(native);
        CHECK(counts.at(GateKind::Cx) == 0);
        CHECK(counts.at(GateKind::Ms) == 2);
        CHECK(counts.at(GateKind::Ry) == 8);   // 4 data + 4 from the decomposition
        CHECK(counts.at(GateKind::Rx) == 4);
    }
    SUBCASE("H is rejected") {
        Circuit c(1);
        c.append(Gate::h(0));
        CHECK_THROWS_AS(transpile_cx(c), unsupported_gate_error);
    }
}

TEST_CASE("peephole optimization passes") {
    SUBCASE("inverse rotations cancel") {
        Circuit c(1);
        c.append(Gate::ry(0, 0.8));
        c.append(Gate::ry(0, -0.8));
        CHECK(optimize(c).empty());
    }
    SUBCASE("adjacent CX pairs cancel") {
        Circuit c(2);
        c.append(Gate::cx(0, 1));
        c.append(Gate::cx(0, 1));
        CHECK(optimize(c).empty());
    }
    SUBCASE("disjoint-support gates are looked through") {
        Circuit c(3);
        c.append(Gate::cx(0, 1));
        c.append(Gate::ry(2, 0.4));
        c.append(Gate::cx(0, 1));
        const Circuit out = optimize(c);
        REQUIRE(out.size() == 1);
        CHECK(out.gates[0] == Gate::ry(2, 0.4));
    }
    SUBCASE("overlapping-support gates block cancellation") {
        Circuit c(2);
        c.append(Gate::cx(0, 1));
        c.append(Gate::ry(1, 0.4));
        c.append(Gate::cx(0, 1));
        CHECK(optimize(c).size() == 3);
    }
    SUBCASE("a merged 2pi rotation is dropped as a recorded sign flip") {
        Circuit c(1);
        c.append(Gate::ry(0, kPi));
        c.append(Gate::ry(0, kPi));
        const Circuit out = optimize(c);
        CHECK(out.empty());
        CHECK(out.metadata.at("global_phase_flips") == "1");

        Circuit full_turn(1);
        full_turn.append(Gate::rx(0, 4.0 * kPi));
        const Circuit gone = optimize(full_turn);
        CHECK(gone.empty());
        CHECK(gone.metadata.count("global_phase_flips") == 0);
    }
    SUBCASE("RPHI merges only when the axis matches") {
        Circuit c(1);
        c.append(Gate::rphi(0, 0.3, 0.5));
        c.append(Gate::rphi(0, 0.3, 0.7));
        CHECK(optimize(c).size() == 1);

        Circuit mixed(1);
        mixed.append(Gate::rphi(0, 0.3, 0.5));
        mixed.append(Gate::rphi(0, 0.4, 0.7));
        CHECK(optimize(mixed).size() == 2);
    }
    SUBCASE("same-pair MS gates merge and wrap") {
        Circuit c(2);
        c.append(Gate::ms(0, 1, 0.5));
        c.append(Gate::ms(1, 0, -0.5));   // symmetric pair
        CHECK(optimize(c).empty());

        Circuit sum(2);
        sum.append(Gate::ms(0, 1, 2.0));
        sum.append(Gate::ms(0, 1, 2.0));
        const Circuit merged = optimize(sum);
        REQUIRE(merged.size() == 1);
        CHECK(merged.gates[0].params[0] == doctest::Approx(4.0 - 2.0 * kPi).epsilon(1e-12));
    }
    SUBCASE("mirrored RY+CX circuits lose all two-qubit gates") {
        const RyAngles x{0.3, 0.7, 1.1, 2.9};
        const RyAngles y{0.5, 0.2, 2.2, 1.4};
        const Circuit mirror = concat(encode_ry_cx(x), adjoint(encode_ry_cx(y)));
        const Circuit out = optimize(mirror);
        const auto counts = count_gates(out);
        CHECK(counts.at(GateKind::Cx) == 0);
        CHECK(counts.at(GateKind::Ms) == 0);
        REQUIRE(counts.at(GateKind::Ry) == 4);   // eight RY merge pairwise
        for (int q = 0; q < 4; ++q) {
            CHECK(out.gates[static_cast<std::size_t>(q)].params[0] ==
                  doctest::Approx(x[static_cast<std::size_t>(q)] - y[static_cast<std::size_t>(q)])
                      .epsilon(1e-12));
        }
    }
}

TEST_CASE("rewrites preserve semantics on random circuits") {
    Rng rng(2718);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform() * 4.0) % 4;   // up to 5 qubits
        const Circuit c = random_circuit(n, 2 + static_cast<int>(rng.uniform() * 18.0), rng);
        const oracle::CMat reference = oracle::circuit_unitary_via_simulator(c);

        const Circuit native = transpile_cx(c);
        CHECK(count_gates(native).at(GateKind::Cx) == 0);
        CHECK(oracle::phase_aligned_distance(
                  reference, oracle::circuit_unitary_via_simulator(native)) < 1e-9);

        const Circuit rewritten = optimize(c);
        CHECK(rewritten.size() <= c.size());   // never grows
        CHECK(oracle::phase_aligned_distance(
                  reference, oracle::circuit_unitary_via_simulator(rewritten)) < 1e-9);

        // Structural idempotence.
        const Circuit twice = optimize(rewritten);
        CHECK(twice.gates == rewritten.gates);
        ++checked;
    }
    CHECK(checked == 60);
}

TEST_CASE("graph kernel merging") {
    SUBCASE("identical graphs produce only zero angles") {
        const GraphInstance g = GraphInstance::ring(std::vector<double>{0.5, -1.0, 0.25});
        const Circuit merged = merge_graph_kernel(g, g, 0.8);
        CHECK(merged.size() == 3);
        for (const Gate& gate : merged.gates) CHECK(gate.params[0] == 0.0);
        CHECK(optimize(merged).empty());
    }
    SUBCASE("a single differing edge leaves a single MS") {
        // Normalized difference is (1, 0, 0) across edges (01), (12), (02).
        GraphInstance a(3), b(3);
        a.set_weight(0, 1, 1.0);
        a.set_weight(1, 2, 1.0);
        a.set_weight(0, 2, 1.0);
        b.set_weight(1, 2, 1.0);
        b.set_weight(0, 2, 1.0);
        const Circuit merged = optimize(merge_graph_kernel(a, b, 0.8));
        REQUIRE(merged.size() == 1);
        CHECK(merged.gates[0].kind == GateKind::Ms);
        CHECK(merged.gates[0].qubits[0] == 0);
        CHECK(merged.gates[0].qubits[1] == 1);
        CHECK(merged.gates[0].params[0] == doctest::Approx(0.8).epsilon(1e-12));
    }
    SUBCASE("five-vertex rings merge to five MS gates") {
        Rng rng(9);
        std::vector<double> wa(5), wb(5);
        for (auto& w : wa) w = rng.normal();
        for (auto& w : wb) w = rng.normal();
        const Circuit merged =
            merge_graph_kernel(GraphInstance::ring(wa), GraphInstance::ring(wb), 0.8);
        CHECK(merged.size() == 5);
        CHECK(count_gates(merged).at(GateKind::Ms) == 5);
    }
    SUBCASE("vertex-count mismatch") {
        CHECK_THROWS_AS(merge_graph_kernel(GraphInstance(3), GraphInstance(4), 0.8), shape_error);
    }
}
