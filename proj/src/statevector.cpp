#include "qsvm/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qsvm/errors.hpp"
#include "qsvm/rng.hpp"
#include "qsvm/simd.hpp"

namespace qsvm {

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw config_error("qubit count must be in [1, " + std::to_string(kMaxQubits) +
                           "], got " + std::to_string(n_qubits));
    }
    amps_.assign(std::size_t{1} << n_qubits, c64{0.0, 0.0});
    amps_[0] = c64{1.0, 0.0};
}

void StateVector::check_qubit(int qubit) const {
    if (qubit < 0 || qubit >= n_qubits_) {
        throw index_error("qubit index " + std::to_string(qubit) + " out of range for " +
                          std::to_string(n_qubits_) + " qubits");
    }
}

void StateVector::apply_rphi(int qubit, double phi, double theta) {
    check_qubit(qubit);
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    // [[cos(t/2), -i e^{-i phi} sin(t/2)], [-i e^{i phi} sin(t/2), cos(t/2)]]
    const c64 u01 = c64{0.0, -1.0} * std::exp(c64{0.0, -phi}) * s;
    const c64 u10 = c64{0.0, -1.0} * std::exp(c64{0.0, phi}) * s;
    simd::active_kernels().apply_1q(amps_.data(), amps_.size(), bitpos(qubit), c64{c, 0.0}, u01,
                                    u10, c64{c, 0.0});
}

void StateVector::apply_rx(int qubit, double theta) {
    check_qubit(qubit);
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    simd::active_kernels().apply_1q(amps_.data(), amps_.size(), bitpos(qubit), c64{c, 0.0},
                                    c64{0.0, -s}, c64{0.0, -s}, c64{c, 0.0});
}

void StateVector::apply_ry(int qubit, double theta) {
    check_qubit(qubit);
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    simd::active_kernels().apply_1q(amps_.data(), amps_.size(), bitpos(qubit), c64{c, 0.0},
                                    c64{-s, 0.0}, c64{s, 0.0}, c64{c, 0.0});
}

void StateVector::apply_ms(int q1, int q2, double chi) {
    check_qubit(q1);
    check_qubit(q2);
    if (q1 == q2) throw index_error("MS gate requires two distinct qubits");
    simd::active_kernels().apply_xx(amps_.data(), amps_.size(), bitpos(q1), bitpos(q2),
                                    std::cos(chi), std::sin(chi));
}

void StateVector::apply_cx(int control, int target) {
    check_qubit(control);
    check_qubit(target);
    if (control == target) throw index_error("CX gate requires two distinct qubits");
    const std::size_t control_mask = std::size_t{1} << bitpos(control);
    const std::size_t target_mask = std::size_t{1} << bitpos(target);
    // Permutation: swap |c=1,t=0> and |c=1,t=1>. Visit each orbit once.
    for (std::size_t x = 0; x < amps_.size(); ++x) {
        if ((x & control_mask) != 0 && (x & target_mask) == 0) {
            std::swap(amps_[x], amps_[x | target_mask]);
        }
    }
}

void StateVector::apply_h(int qubit) {
    check_qubit(qubit);
    const double inv_sqrt2 = 0.70710678118654752440;
    simd::active_kernels().apply_1q(amps_.data(), amps_.size(), bitpos(qubit),
                                    c64{inv_sqrt2, 0.0}, c64{inv_sqrt2, 0.0},
                                    c64{inv_sqrt2, 0.0}, c64{-inv_sqrt2, 0.0});
}

void StateVector::apply_x(int qubit) {
    check_qubit(qubit);
    simd::active_kernels().apply_1q(amps_.data(), amps_.size(), bitpos(qubit), c64{0.0, 0.0},
                                    c64{1.0, 0.0}, c64{1.0, 0.0}, c64{0.0, 0.0});
}

void StateVector::apply_y(int qubit) {
    check_qubit(qubit);
    simd::active_kernels().apply_1q(amps_.data(), amps_.size(), bitpos(qubit), c64{0.0, 0.0},
                                    c64{0.0, -1.0}, c64{0.0, 1.0}, c64{0.0, 0.0});
}

void StateVector::apply_z(int qubit) {
    check_qubit(qubit);
    simd::active_kernels().apply_1q(amps_.data(), amps_.size(), bitpos(qubit), c64{1.0, 0.0},
                                    c64{0.0, 0.0}, c64{0.0, 0.0}, c64{-1.0, 0.0});
}

void StateVector::apply_gate(const Gate& gate) {
    switch (gate.kind) {
        case GateKind::Rphi: apply_rphi(gate.qubits[0], gate.params[0], gate.params[1]); return;
        case GateKind::Rx: apply_rx(gate.qubits[0], gate.params[0]); return;
        case GateKind::Ry: apply_ry(gate.qubits[0], gate.params[0]); return;
        case GateKind::Cx: apply_cx(gate.qubits[0], gate.qubits[1]); return;
        case GateKind::Ms: apply_ms(gate.qubits[0], gate.qubits[1], gate.params[0]); return;
        case GateKind::H: apply_h(gate.qubits[0]); return;
    }
    throw config_error("unhandled gate kind");
}

double StateVector::probability_all_zeros() const {
    const double re = amps_[0].real(), im = amps_[0].imag();
    return re * re + im * im;
}

std::vector<double> StateVector::born_probabilities() const {
    std::vector<double> probs(amps_.size());
    simd::active_kernels().born_probabilities(amps_.data(), amps_.size(), probs.data());
    return probs;
}

double StateVector::norm_squared() const {
    return simd::active_kernels().norm_squared(amps_.data(), amps_.size());
}

std::size_t StateVector::draw_outcome(Rng& rng) const {
    const std::vector<double> probs = born_probabilities();
    const double u = rng.uniform();
    double cumulative = 0.0;
    for (std::size_t x = 0; x + 1 < probs.size(); ++x) {
        cumulative += probs[x];
        if (u < cumulative) return x;
    }
    return probs.size() - 1;
}

MeasurementOutcome StateVector::sample(std::uint64_t shots, std::uint64_t seed) const {
    if (shots < 1) throw config_error("shot count must be positive");
    const std::vector<double> probs = born_probabilities();
    std::vector<double> cdf(probs.size());
    std::partial_sum(probs.begin(), probs.end(), cdf.begin());

    Rng rng(seed);
    std::vector<std::uint64_t> tally(probs.size(), 0);
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = rng.uniform();
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const std::size_t x =
            it == cdf.end() ? probs.size() - 1 : static_cast<std::size_t>(it - cdf.begin());
        ++tally[x];
    }

    MeasurementOutcome outcome;
    outcome.shots = shots;
    for (std::size_t x = 0; x < tally.size(); ++x) {
        if (tally[x] != 0) outcome.counts[index_to_bitstring(x, n_qubits_)] = tally[x];
    }
    return outcome;
}

StateVector zero_state(int n_qubits) { return StateVector(n_qubits); }

StateVector run_circuit(const Circuit& circuit, StateVector initial) {
    if (circuit.n_qubits != initial.n_qubits()) {
        throw shape_error("circuit acts on " + std::to_string(circuit.n_qubits) +
                          " qubits but state has " + std::to_string(initial.n_qubits()));
    }
    for (const Gate& gate : circuit.gates) initial.apply_gate(gate);
    return initial;
}

StateVector run_circuit(const Circuit& circuit) {
    return run_circuit(circuit, StateVector(circuit.n_qubits));
}

bool states_equal_up_to_phase(const StateVector& a, const StateVector& b, double tol) {
    if (a.dim() != b.dim()) return false;
    // Reference phase from the largest-magnitude amplitude pair.
    std::size_t ref = 0;
    double best = -1.0;
    for (std::size_t x = 0; x < a.dim(); ++x) {
        const double mag = std::abs(a.amplitude(x));
        if (mag > best) {
            best = mag;
            ref = x;
        }
    }
    if (best < tol) return true;   // both effectively zero
    if (std::abs(b.amplitude(ref)) == 0.0) return false;
    const c64 phase = a.amplitude(ref) / b.amplitude(ref);
    const double mag = std::abs(phase);
    if (mag == 0.0) return false;
    const c64 unit_phase = phase / mag;
    for (std::size_t x = 0; x < a.dim(); ++x) {
        if (std::abs(a.amplitude(x) - unit_phase * b.amplitude(x)) > tol) return false;
    }
    return true;
}

std::string index_to_bitstring(std::size_t index, int n_qubits) {
    std::string bits(static_cast<std::size_t>(n_qubits), '0');
    for (int q = 0; q < n_qubits; ++q) {
        if ((index >> (n_qubits - 1 - q)) & 1) bits[static_cast<std::size_t>(q)] = '1';
    }
    return bits;
}

std::size_t bitstring_to_index(const std::string& bits) {
    std::size_t index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') throw data_error("invalid bitstring: " + bits);
        index = (index << 1) | static_cast<std::size_t>(c == '1');
    }
    return index;
}

}  // namespace qsvm
