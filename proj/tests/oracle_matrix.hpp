#pragma once

// Test-only dense matrix oracle. Builds full circuit unitaries from the gate
// definitions with Kronecker products and plain matrix multiplication --
// deliberately independent of the simulator's amplitude-update path -- plus a
// second route that extracts the unitary by running the simulator on every
// basis state. Gate-application code is validated by comparing the two.

#include <complex>
#include <cstddef>
#include <vector>

#include "qsvm/circuit.hpp"
#include "qsvm/statevector.hpp"

namespace oracle {

using c64 = std::complex<double>;

struct CMat {
    std::size_t n = 0;
    std::vector<c64> data;   // row-major

    explicit CMat(std::size_t size) : n(size), data(size * size, c64{0, 0}) {}
    c64& at(std::size_t r, std::size_t c) { return data[r * n + c]; }
    c64 at(std::size_t r, std::size_t c) const { return data[r * n + c]; }

    static CMat identity(std::size_t size) {
        CMat m(size);
        for (std::size_t i = 0; i < size; ++i) m.at(i, i) = 1.0;
        return m;
    }
};

inline CMat matmul(const CMat& a, const CMat& b) {
    CMat out(a.n);
    for (std::size_t i = 0; i < a.n; ++i) {
        for (std::size_t k = 0; k < a.n; ++k) {
            const c64 aik = a.at(i, k);
            if (aik == c64{0, 0}) continue;
            for (std::size_t j = 0; j < a.n; ++j) out.at(i, j) += aik * b.at(k, j);
        }
    }
    return out;
}

inline CMat kron(const CMat& a, const CMat& b) {
    CMat out(a.n * b.n);
    for (std::size_t i = 0; i < a.n; ++i) {
        for (std::size_t j = 0; j < a.n; ++j) {
            for (std::size_t k = 0; k < b.n; ++k) {
                for (std::size_t l = 0; l < b.n; ++l) {
                    out.at(i * b.n + k, j * b.n + l) = a.at(i, j) * b.at(k, l);
                }
            }
        }
    }
    return out;
}

inline CMat rphi_matrix(double phi, double theta) {
    CMat m(2);
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    m.at(0, 0) = c;
    m.at(0, 1) = c64{0, -1} * std::exp(c64{0, -phi}) * s;
    m.at(1, 0) = c64{0, -1} * std::exp(c64{0, phi}) * s;
    m.at(1, 1) = c;
    return m;
}

inline CMat pauli_x() {
    CMat m(2);
    m.at(0, 1) = 1.0;
    m.at(1, 0) = 1.0;
    return m;
}

inline CMat h_matrix() {
    CMat m(2);
    const double v = 1.0 / std::sqrt(2.0);
    m.at(0, 0) = v;
    m.at(0, 1) = v;
    m.at(1, 0) = v;
    m.at(1, 1) = -v;
    return m;
}

inline CMat cx_matrix_2q() {
    CMat m = CMat::identity(4);
    m.at(2, 2) = 0;
    m.at(3, 3) = 0;
    m.at(2, 3) = 1.0;
    m.at(3, 2) = 1.0;
    return m;
}

inline CMat ms_matrix_2q(double chi) {
    const CMat xx = kron(pauli_x(), pauli_x());
    CMat m = CMat::identity(4);
    const c64 c{std::cos(chi), 0};
    const c64 minus_i_s{0, -std::sin(chi)};
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) m.at(i, j) = c * (i == j ? 1.0 : 0.0) + minus_i_s * xx.at(i, j);
    }
    return m;
}

// Embed a one-qubit matrix at `qubit` (qubit 0 is the most significant bit).
inline CMat embed_1q(const CMat& u, int qubit, int n_qubits) {
    CMat out = CMat::identity(1);
    for (int q = 0; q < n_qubits; ++q) {
        out = kron(out, q == qubit ? u : CMat::identity(2));
    }
    return out;
}

// Embed a two-qubit matrix given in (a, b) tensor order onto arbitrary wires
// by conjugating basis indices.
inline CMat embed_2q(const CMat& u, int qa, int qb, int n_qubits) {
    const std::size_t dim = std::size_t{1} << n_qubits;
    const auto bit_of = [&](std::size_t x, int q) { return (x >> (n_qubits - 1 - q)) & 1; };
    CMat out(dim);
    for (std::size_t col = 0; col < dim; ++col) {
        const std::size_t in_sub = bit_of(col, qa) * 2 + bit_of(col, qb);
        for (std::size_t ra = 0; ra < 2; ++ra) {
            for (std::size_t rb = 0; rb < 2; ++rb) {
                const c64 value = u.at(ra * 2 + rb, in_sub);
                if (value == c64{0, 0}) continue;
                std::size_t row = col;
                row &= ~(std::size_t{1} << (n_qubits - 1 - qa));
                row &= ~(std::size_t{1} << (n_qubits - 1 - qb));
                row |= ra << (n_qubits - 1 - qa);
                row |= rb << (n_qubits - 1 - qb);
                out.at(row, col) += value;
            }
        }
    }
    return out;
}

inline CMat gate_matrix(const qsvm::Gate& gate, int n_qubits) {
    using qsvm::GateKind;
    switch (gate.kind) {
        case GateKind::Rphi:
            return embed_1q(rphi_matrix(gate.params[0], gate.params[1]), gate.qubits[0], n_qubits);
        case GateKind::Rx:
            return embed_1q(rphi_matrix(0.0, gate.params[0]), gate.qubits[0], n_qubits);
        case GateKind::Ry:
            return embed_1q(rphi_matrix(1.5707963267948966, gate.params[0]), gate.qubits[0],
                            n_qubits);
        case GateKind::H: return embed_1q(h_matrix(), gate.qubits[0], n_qubits);
        case GateKind::Cx:
            return embed_2q(cx_matrix_2q(), gate.qubits[0], gate.qubits[1], n_qubits);
        case GateKind::Ms:
            return embed_2q(ms_matrix_2q(gate.params[0]), gate.qubits[0], gate.qubits[1], n_qubits);
    }
    return CMat::identity(std::size_t{1} << n_qubits);
}

// Route 1: pure matrix algebra from the gate definitions.
inline CMat circuit_unitary_from_matrices(const qsvm::Circuit& circuit) {
    CMat u = CMat::identity(std::size_t{1} << circuit.n_qubits);
    for (const auto& gate : circuit.gates) {
        u = matmul(gate_matrix(gate, circuit.n_qubits), u);
    }
    return u;
}

// Route 2: the simulator applied to every basis state (columns of U).
inline CMat circuit_unitary_via_simulator(const qsvm::Circuit& circuit) {
    const std::size_t dim = std::size_t{1} << circuit.n_qubits;
    CMat u(dim);
    for (std::size_t col = 0; col < dim; ++col) {
        qsvm::StateVector state(circuit.n_qubits);
        for (int q = 0; q < circuit.n_qubits; ++q) {
            if ((col >> (circuit.n_qubits - 1 - q)) & 1) state.apply_x(q);
        }
        state = run_circuit(circuit, std::move(state));
        for (std::size_t row = 0; row < dim; ++row) u.at(row, col) = state.amplitude(row);
    }
    return u;
}

// Max entrywise deviation after aligning the global phase on the
// largest-magnitude entry of `a`.
inline double phase_aligned_distance(const CMat& a, const CMat& b) {
    std::size_t ref = 0;
    double best = -1.0;
    for (std::size_t k = 0; k < a.data.size(); ++k) {
        if (std::abs(a.data[k]) > best) {
            best = std::abs(a.data[k]);
            ref = k;
        }
    }
    if (best == 0.0) return 0.0;
    if (std::abs(b.data[ref]) == 0.0) return 1.0;
    c64 phase = a.data[ref] / b.data[ref];
    phase /= std::abs(phase);
    double worst = 0.0;
    for (std::size_t k = 0; k < a.data.size(); ++k) {
        worst = std::max(worst, std::abs(a.data[k] - phase * b.data[k]));
    }
    return worst;
}

inline bool matrices_equal_up_to_phase(const CMat& a, const CMat& b, double tol) {
    return phase_aligned_distance(a, b) <= tol;
}

}  // namespace oracle
