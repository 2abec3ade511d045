#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qsvm/circuit.hpp"

namespace qsvm {

using c64 = std::complex<double>;

// Dense simulation is capped here; 2^12 amplitudes keep brute-force checks
// instant while covering every circuit the toolkit builds.
inline constexpr int kMaxQubits = 12;

struct MeasurementOutcome {
    std::map<std::string, std::uint64_t> counts;   // n-bit string -> occurrences
    std::uint64_t shots = 0;
};

// Dense amplitude vector over n qubits.
//
// Bit ordering convention, fixed toolkit-wide: qubit 0 is the MOST significant
// bit of the basis-state index, so |q0 q1 ... q_{n-1}> reads left to right as
// the binary expansion of the index. One canonical test asserts this.
class StateVector {
  public:
    explicit StateVector(int n_qubits);

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return amps_.size(); }
    std::span<const c64> amplitudes() const { return amps_; }
    c64 amplitude(std::size_t index) const { return amps_[index]; }

    // R_phi(theta) = exp(-i sigma_phi theta / 2), the native one-qubit rotation.
    void apply_rphi(int qubit, double phi, double theta);
    void apply_rx(int qubit, double theta);   // R_0
    void apply_ry(int qubit, double theta);   // R_{pi/2}
    // MS(chi) = exp(-i chi X(x)X); symmetric in its qubit arguments.
    void apply_ms(int q1, int q2, double chi);
    void apply_cx(int control, int target);
    void apply_h(int qubit);
    // Pauli operators, used by the stochastic noise channel.
    void apply_x(int qubit);
    void apply_y(int qubit);
    void apply_z(int qubit);

    void apply_gate(const Gate& gate);

    double probability_all_zeros() const;
    std::vector<double> born_probabilities() const;
    double norm_squared() const;

    // Seeded Born sampling; identical (state, shots, seed) gives identical
    // counts (see rng.hpp for the reproducibility contract).
    MeasurementOutcome sample(std::uint64_t shots, std::uint64_t seed) const;

    // One Born draw from an externally managed stream.
    std::size_t draw_outcome(class Rng& rng) const;

  private:
    unsigned bitpos(int qubit) const { return static_cast<unsigned>(n_qubits_ - 1 - qubit); }
    void check_qubit(int qubit) const;

    int n_qubits_;
    std::vector<c64> amps_;
};

StateVector zero_state(int n_qubits);

StateVector run_circuit(const Circuit& circuit, StateVector initial);
StateVector run_circuit(const Circuit& circuit);   // from |0...0>

// Equality modulo global phase: the reference phase is taken from the
// largest-magnitude amplitude of `a`, then max_x |a_x - e^{i alpha} b_x| <= tol.
bool states_equal_up_to_phase(const StateVector& a, const StateVector& b, double tol);

std::string index_to_bitstring(std::size_t index, int n_qubits);
std::size_t bitstring_to_index(const std::string& bits);

}  // namespace qsvm
