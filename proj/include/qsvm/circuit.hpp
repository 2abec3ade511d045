#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace qsvm {

// Native gate set of the target processor plus CX (decomposable) and H
// (oracle/test use only; rejected by the transpiler and the noise channel).
enum class GateKind { Rphi, Rx, Ry, Cx, Ms, H };

const char* gate_kind_name(GateKind kind);

struct Gate {
    GateKind kind = GateKind::Rx;
    std::array<int, 2> qubits{-1, -1};    // qubits[1] == -1 for one-qubit gates
    std::array<double, 2> params{0, 0};   // Rphi: {phi, theta}; Rx/Ry: {theta}; Ms: {chi}

    static Gate rphi(int qubit, double phi, double theta);
    static Gate rx(int qubit, double theta);
    static Gate ry(int qubit, double theta);
    static Gate cx(int control, int target);
    static Gate ms(int a, int b, double chi);
    static Gate h(int qubit);

    int arity() const { return qubits[1] < 0 ? 1 : 2; }
    int param_count() const;
    Gate inverse() const;
    bool acts_on(int qubit) const { return qubits[0] == qubit || qubits[1] == qubit; }
    bool overlaps(const Gate& other) const;
    // Same unordered qubit set. MS is symmetric; CX is not, so CX additionally
    // requires matching (control, target) order where it matters.
    bool same_qubits(const Gate& other) const;

    bool operator==(const Gate& other) const = default;
};

// Ordered gate list. Circuits are plain values: rewrites return new circuits.
struct Circuit {
    int n_qubits = 0;
    std::vector<Gate> gates;
    std::map<std::string, std::string> metadata;

    Circuit() = default;
    explicit Circuit(int n) : n_qubits(n) {}

    // Validates qubit indices and angle finiteness before storing.
    void append(Gate gate);

    std::size_t size() const { return gates.size(); }
    bool empty() const { return gates.empty(); }
};

Circuit concat(const Circuit& first, const Circuit& second);

// Reversed gate order with every gate inverted.
Circuit adjoint(const Circuit& circuit);

std::map<GateKind, std::size_t> count_gates(const Circuit& circuit);
std::size_t count_two_qubit_gates(const Circuit& circuit);

// Text form, one gate per line: `KIND q[,q] [angle[,angle]]`, angles printed
// with 17 significant digits, `#` starts a comment. The printer emits a
// `# qubits: N` comment so idle top qubits survive a round trip.
std::string circuit_to_text(const Circuit& circuit);
Circuit circuit_from_text(const std::string& text);
Circuit circuit_from_stream(std::istream& in);

}  // namespace qsvm
