#include <doctest.h>

#include <cmath>

#include "oracle_matrix.hpp"
#include "qsvm/circuit.hpp"
#include "qsvm/errors.hpp"
#include "qsvm/rng.hpp"

using namespace qsvm;

namespace {

constexpr double kPi = 3.14159265358979323846;

Circuit random_circuit(int n_qubits, int gate_count, Rng& rng) {
    Circuit circuit(n_qubits);
    for (int g = 0; g < gate_count; ++g) {
        const double pick = rng.uniform();
        const int q = static_cast<int>(rng.uniform() * n_qubits) % n_qubits;
        const double angle = (rng.uniform() - 0.5) * 4.0 * kPi;
        if (pick < 0.35) {
            circuit.append(Gate::ry(q, angle));
        } else if (pick < 0.6) {
            circuit.append(Gate::rx(q, angle));
        } else if (pick < 0.72) {
            circuit.append(Gate::rphi(q, rng.uniform() * 2.0 * kPi, angle));
        } else if (n_qubits >= 2) {
            int q2 = static_cast<int>(rng.uniform() * n_qubits) % n_qubits;
            if (q2 == q) q2 = (q2 + 1) % n_qubits;
            if (pick < 0.86) {
                circuit.append(Gate::ms(q, q2, angle / 2.0));
            } else {
                circuit.append(Gate::cx(q, q2));
            }
        } else {
            circuit.append(Gate::ry(q, angle));
        }
    }
    return circuit;
}

}  // namespace

TEST_CASE("circuit construction validates gates") {
    Circuit c(2);
    c.append(Gate::ry(0, 0.5));
    c.append(Gate::cx(0, 1));
    CHECK(c.size() == 2);

    CHECK_THROWS_AS(c.append(Gate::ry(2, 0.5)), index_error);
    CHECK_THROWS_AS(c.append(Gate::cx(1, 1)), index_error);
    CHECK_THROWS_AS(c.append(Gate::rx(0, std::nan(""))), domain_error);
    CHECK_THROWS_AS(concat(Circuit(2), Circuit(3)), shape_error);
}

TEST_CASE("adjoint reverses and inverts") {
    SUBCASE("empty circuit") { CHECK(adjoint(Circuit(3)).empty()); }
    SUBCASE("single rotation flips its angle") {
        Circuit c(1);
        c.append(Gate::ry(0, kPi / 3.0));
        const Circuit inv = adjoint(c);
        REQUIRE(inv.size() == 1);
        CHECK(inv.gates[0].kind == GateKind::Ry);
        CHECK(inv.gates[0].params[0] == -kPi / 3.0);
    }
    SUBCASE("U(adjoint) * U is the identity for random circuits") {
        Rng rng(5);
        for (int trial = 0; trial < 10; ++trial) {
            const Circuit c = random_circuit(3, 14, rng);
            const oracle::CMat product =
                oracle::matmul(oracle::circuit_unitary_from_matrices(adjoint(c)),
                               oracle::circuit_unitary_from_matrices(c));
            CHECK(oracle::phase_aligned_distance(oracle::CMat::identity(8), product) < 1e-10);
        }
    }
}

TEST_CASE("gate counting") {
    CHECK(count_gates(Circuit(2)).at(GateKind::Ms) == 0);
    Circuit c(3);
    c.append(Gate::ry(0, 1.0));
    c.append(Gate::ms(0, 1, 0.2));
    c.append(Gate::ms(1, 2, 0.3));
    c.append(Gate::cx(0, 2));
    const auto counts = count_gates(c);
    CHECK(counts.at(GateKind::Ry) == 1);
    CHECK(counts.at(GateKind::Ms) == 2);
    CHECK(counts.at(GateKind::Cx) == 1);
    CHECK(counts.at(GateKind::Rx) == 0);
    CHECK(count_two_qubit_gates(c) == 3);
}

TEST_CASE("text format round trip is lossless") {
    Rng rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        const Circuit original = random_circuit(4, 15, rng);
        const Circuit reparsed = circuit_from_text(circuit_to_text(original));
        REQUIRE(reparsed.n_qubits == original.n_qubits);
        REQUIRE(reparsed.size() == original.size());
        for (std::size_t i = 0; i < original.size(); ++i) {
            CHECK(reparsed.gates[i] == original.gates[i]);   // %.17g is exact for doubles
        }
    }
}

TEST_CASE("text parsing details") {
    SUBCASE("comments, blank lines and the qubit header") {
        const Circuit c = circuit_from_text(
            "# qubits: 5\n"
            "\n"
            "RY 0 1.5  # half-ish turn\n"
            "MS 1,3 -0.25\n"
            "CX 2,4\n"
            "H 4\n"
            "RPHI 3 0.5,1.25\n");
        CHECK(c.n_qubits == 5);
        REQUIRE(c.size() == 5);
        CHECK(c.gates[0] == Gate::ry(0, 1.5));
        CHECK(c.gates[1] == Gate::ms(1, 3, -0.25));
        CHECK(c.gates[2] == Gate::cx(2, 4));
        CHECK(c.gates[3] == Gate::h(4));
        CHECK(c.gates[4] == Gate::rphi(3, 0.5, 1.25));
    }
    SUBCASE("qubit count inferred when no header present") {
        const Circuit c = circuit_from_text("RY 2 0.5\n");
        CHECK(c.n_qubits == 3);
    }
    SUBCASE("empty text gives an empty circuit") {
        const Circuit c = circuit_from_text("# just a comment\n");
        CHECK(c.empty());
        CHECK(circuit_to_text(Circuit(0)) == "# qubits: 0\n");
    }
    SUBCASE("errors carry line numbers") {
        try {
            circuit_from_text("RY 0 0.5\nBAD 1 0.1\n");
            FAIL("expected parse_error");
        } catch (const parse_error& e) {
            CHECK(e.line_number == 2);
        }
        CHECK_THROWS_AS(circuit_from_text("RY 0\n"), parse_error);
        CHECK_THROWS_AS(circuit_from_text("MS 0 0.5\n"), parse_error);
        CHECK_THROWS_AS(circuit_from_text("RY 0 abc\n"), parse_error);
        CHECK_THROWS_AS(circuit_from_text("RY 0 0.5 junk\n"), parse_error);
        CHECK_THROWS_AS(circuit_from_text("CX 0,0\n"), index_error);
    }
}
