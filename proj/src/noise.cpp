#include "qsvm/noise.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "qsvm/errors.hpp"
#include "qsvm/rng.hpp"

namespace qsvm {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_native(GateKind kind) {
    return kind == GateKind::Rphi || kind == GateKind::Rx || kind == GateKind::Ry ||
           kind == GateKind::Ms;
}

}  // namespace

NoiseConfig NoiseConfig::off() {
    NoiseConfig cfg;
    cfg.enabled = false;
    cfg.p_1q = 0.0;
    cfg.p_ms_base = 0.0;
    cfg.ms_chi_slope = 0.0;
    cfg.p_readout = 0.0;
    return cfg;
}

void NoiseConfig::validate() const {
    auto check = [](double p, const char* name) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw config_error(std::string(name) + " must lie in [0, 1]");
        }
    };
    check(p_1q, "p_1q");
    check(p_ms_base, "p_ms_base");
    check(ms_chi_slope, "ms_chi_slope");
    check(p_readout, "p_readout");
}

NoiseConfig default_calibration() { return NoiseConfig{}; }

double ms_error_prob(double chi, const NoiseConfig& cfg) {
    const double relative = std::abs(chi) / (kPi / 4.0);
    const double p = cfg.p_ms_base * ((1.0 - cfg.ms_chi_slope) + cfg.ms_chi_slope * relative);
    return std::clamp(p, 0.0, 1.0);
}

namespace {

double gate_error_prob(const Gate& gate, const NoiseConfig& cfg) {
    if (gate.kind == GateKind::Ms) return ms_error_prob(gate.params[0], cfg);
    return cfg.p_1q;
}

void apply_pauli(StateVector& state, int qubit, int pauli) {
    switch (pauli) {
        case 1: state.apply_x(qubit); return;
        case 2: state.apply_y(qubit); return;
        case 3: state.apply_z(qubit); return;
        default: return;
    }
}

// One circuit replay with stochastic Pauli insertion, then a readout draw
// with independent per-bit flips. Returns the observed basis index.
std::size_t run_trajectory(const Circuit& circuit, const NoiseConfig& cfg, Rng& rng) {
    StateVector state(circuit.n_qubits);
    for (const Gate& gate : circuit.gates) {
        state.apply_gate(gate);
        const double p = gate_error_prob(gate, cfg);
        if (p > 0.0 && rng.uniform() < p) {
            if (gate.arity() == 1) {
                const int pauli = 1 + static_cast<int>(rng.uniform() * 3.0);
                apply_pauli(state, gate.qubits[0], std::min(pauli, 3));
            } else {
                // Uniform over the 15 non-identity two-qubit Paulis.
                const int combined = 1 + static_cast<int>(rng.uniform() * 15.0);
                const int index = std::min(combined, 15);
                apply_pauli(state, gate.qubits[0], index / 4);
                apply_pauli(state, gate.qubits[1], index % 4);
            }
        }
    }

    std::size_t outcome = state.draw_outcome(rng);
    if (cfg.p_readout > 0.0) {
        for (int q = 0; q < circuit.n_qubits; ++q) {
            if (rng.uniform() < cfg.p_readout) {
                outcome ^= std::size_t{1} << (circuit.n_qubits - 1 - q);
            }
        }
    }
    return outcome;
}

}  // namespace

MeasurementOutcome sample_noisy(const Circuit& circuit, const NoiseConfig& cfg,
                                std::uint64_t shots, std::uint64_t seed) {
    if (shots < 1) throw config_error("shot count must be positive");
    cfg.validate();
    for (const Gate& gate : circuit.gates) {
        if (!is_native(gate.kind)) {
            throw unsupported_gate_error(std::string(gate_kind_name(gate.kind)) +
                                         " is not in the native gate set; decompose it first");
        }
    }
    // All-zero probabilities and disabled are the same channel.
    const bool effectively_off =
        !cfg.enabled || (cfg.p_1q == 0.0 && cfg.p_ms_base == 0.0 && cfg.p_readout == 0.0);
    if (effectively_off) {
        return run_circuit(circuit).sample(shots, seed);
    }

    std::vector<std::uint64_t> tally(std::size_t{1} << circuit.n_qubits, 0);
    for (std::uint64_t shot = 0; shot < shots; ++shot) {
        Rng rng(mix_seed(seed, shot));
        ++tally[run_trajectory(circuit, cfg, rng)];
    }

    MeasurementOutcome outcome;
    outcome.shots = shots;
    for (std::size_t x = 0; x < tally.size(); ++x) {
        if (tally[x] != 0) outcome.counts[index_to_bitstring(x, circuit.n_qubits)] = tally[x];
    }
    return outcome;
}

std::string noise_to_json(const NoiseConfig& cfg) {
    nlohmann::json j{
        {"enabled", cfg.enabled},         {"p_1q", cfg.p_1q},
        {"p_ms_base", cfg.p_ms_base},     {"ms_chi_slope", cfg.ms_chi_slope},
        {"p_readout", cfg.p_readout},
    };
    return j.dump(2) + "\n";
}

NoiseConfig noise_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    NoiseConfig cfg;
    cfg.enabled = j.at("enabled").get<bool>();
    cfg.p_1q = j.at("p_1q").get<double>();
    cfg.p_ms_base = j.at("p_ms_base").get<double>();
    cfg.ms_chi_slope = j.at("ms_chi_slope").get<double>();
    cfg.p_readout = j.at("p_readout").get<double>();
    cfg.validate();
    return cfg;
}

NoiseConfig parse_noise_spec(const std::string& spec) {
    if (spec == "off") return NoiseConfig::off();
    if (spec == "default") return default_calibration();
    std::ifstream in(spec);
    if (!in) throw data_error("cannot open noise config: " + spec);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return noise_from_json(text);
}

}  // namespace qsvm
