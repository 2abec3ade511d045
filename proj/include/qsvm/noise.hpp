#pragma once

#include <cstdint>
#include <string>

#include "qsvm/circuit.hpp"
#include "qsvm/statevector.hpp"

namespace qsvm {

// Depolarizing-plus-readout noise model calibrated to the processor's
// reported figures: 99.95% one-qubit gate fidelity, 96.3% fully entangling
// MS(pi/4) fidelity, ~1% SPAM per ion (folded into readout flips).
struct NoiseConfig {
    bool enabled = true;
    double p_1q = 5e-4;          // depolarizing probability per one-qubit gate
    double p_ms_base = 0.037;    // depolarizing probability of MS(pi/4)
    double ms_chi_slope = 0.5;   // interpolation weight of the |chi| dependence
    double p_readout = 0.01;     // independent per-qubit readout bit flip

    static NoiseConfig off();

    // Throws config_error when a probability leaves [0, 1].
    void validate() const;

    bool operator==(const NoiseConfig&) const = default;
};

NoiseConfig default_calibration();

// MS error grows with |chi| but is not proportional to it; this affine form
//   p(chi) = p_ms_base * ((1 - slope) + slope * |chi| / (pi/4))
// is the exposed stand-in, clamped to [0, 1].
double ms_error_prob(double chi, const NoiseConfig& cfg);

// Stochastic Pauli-trajectory sampling: each shot replays the circuit on a
// fresh state; after every gate a uniformly random non-identity Pauli is
// inserted on the gate's qubit(s) with that gate's error probability (3
// choices for one-qubit gates, 15 for MS); each readout bit then flips
// independently with p_readout. Per-shot streams are derived from (seed,
// shot index), so shots may be distributed across threads without changing
// results. Only native gates are accepted (no H, no CX).
MeasurementOutcome sample_noisy(const Circuit& circuit, const NoiseConfig& cfg,
                                std::uint64_t shots, std::uint64_t seed);

std::string noise_to_json(const NoiseConfig& cfg);
NoiseConfig noise_from_json(const std::string& text);

// CLI spelling: "off", "default", or a path to a JSON file.
NoiseConfig parse_noise_spec(const std::string& spec);

}  // namespace qsvm
