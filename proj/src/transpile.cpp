#include "qsvm/transpile.hpp"

#include <cmath>
#include <cstdlib>

#include "qsvm/errors.hpp"

namespace qsvm {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kAngleTol = 1e-12;

// Wrap into (-pi, pi].
double wrap_pi(double angle) {
    double wrapped = std::fmod(angle, 2.0 * kPi);
    if (wrapped <= -kPi) wrapped += 2.0 * kPi;
    if (wrapped > kPi) wrapped -= 2.0 * kPi;
    return wrapped;
}

// Wrap into (-2pi, 2pi]. Spin-1/2 rotations have period 4pi; 2pi is a pure
// sign flip, so reduction must be modulo 4pi, not 2pi.
double wrap_2pi(double angle) {
    double wrapped = std::fmod(angle, 4.0 * kPi);
    if (wrapped <= -2.0 * kPi) wrapped += 4.0 * kPi;
    if (wrapped > 2.0 * kPi) wrapped -= 4.0 * kPi;
    return wrapped;
}

bool is_rotation(GateKind kind) {
    return kind == GateKind::Rphi || kind == GateKind::Rx || kind == GateKind::Ry;
}

// Rotations merge only about the same axis; for RPHI that means equal phi.
bool same_axis(const Gate& a, const Gate& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == GateKind::Rphi) return a.params[0] == b.params[0];
    return true;
}

double rotation_angle(const Gate& gate) {
    return gate.kind == GateKind::Rphi ? gate.params[1] : gate.params[0];
}

void set_rotation_angle(Gate& gate, double angle) {
    if (gate.kind == GateKind::Rphi) {
        gate.params[1] = angle;
    } else {
        gate.params[0] = angle;
    }
}

}  // namespace

Circuit transpile_cx(const Circuit& circuit) {
    Circuit out(circuit.n_qubits);
    out.metadata = circuit.metadata;
    for (const Gate& gate : circuit.gates) {
        switch (gate.kind) {
            case GateKind::H:
                throw unsupported_gate_error("H is not a native gate and has no decomposition "
                                             "here; it is reserved for test oracles");
            case GateKind::Cx: {
                const int c = gate.qubits[0], t = gate.qubits[1];
                out.append(Gate::ry(c, -kPi / 2.0));
                out.append(Gate::ms(c, t, kPi / 4.0));
                out.append(Gate::rx(c, -kPi / 2.0));
                out.append(Gate::rx(t, kPi / 2.0));
                out.append(Gate::ry(c, kPi / 2.0));
                break;
            }
            default: out.append(gate); break;
        }
    }
    return out;
}

namespace {

// One pass over the gate list. Each gate looks forward for its first
// non-disjoint successor (gates on disjoint qubits commute and are skipped),
// and merges or cancels when the successor matches. Returns true when
// something changed. `phase_flips` counts removed 2pi rotations.
bool rewrite_once(std::vector<Gate>& gates, long& phase_flips) {
    bool changed = false;

    // Pass (i) + (iii): pairwise merges.
    for (std::size_t i = 0; i < gates.size(); ++i) {
        for (std::size_t j = i + 1; j < gates.size(); ++j) {
            if (!gates[i].overlaps(gates[j])) continue;   // commutes past, keep scanning
            const bool mergeable_rotation = is_rotation(gates[i].kind) &&
                                            same_axis(gates[i], gates[j]) &&
                                            gates[i].qubits[0] == gates[j].qubits[0];
            if (mergeable_rotation) {
                set_rotation_angle(gates[i], rotation_angle(gates[i]) + rotation_angle(gates[j]));
                gates.erase(gates.begin() + static_cast<std::ptrdiff_t>(j));
                changed = true;
                break;
            }
            if (gates[i].kind == GateKind::Ms && gates[j].kind == GateKind::Ms &&
                gates[i].same_qubits(gates[j])) {
                gates[i].params[0] = wrap_pi(gates[i].params[0] + gates[j].params[0]);
                gates.erase(gates.begin() + static_cast<std::ptrdiff_t>(j));
                changed = true;
                break;
            }
            if (gates[i].kind == GateKind::Cx && gates[j].kind == GateKind::Cx &&
                gates[i].qubits == gates[j].qubits) {
                gates.erase(gates.begin() + static_cast<std::ptrdiff_t>(j));
                gates.erase(gates.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                --i;
                break;
            }
            break;   // overlapping but not mergeable: blocks further lookahead
        }
    }

    // Pass (ii): identity removal after angle reduction.
    for (std::size_t i = 0; i < gates.size();) {
        bool remove = false;
        if (is_rotation(gates[i].kind)) {
            const double reduced = wrap_2pi(rotation_angle(gates[i]));
            if (std::abs(reduced) <= kAngleTol) {
                remove = true;
            } else if (std::abs(std::abs(reduced) - 2.0 * kPi) <= kAngleTol) {
                ++phase_flips;
                remove = true;
            } else {
                set_rotation_angle(gates[i], reduced);
            }
        } else if (gates[i].kind == GateKind::Ms) {
            const double reduced = wrap_pi(gates[i].params[0]);
            if (std::abs(reduced) <= kAngleTol) {
                remove = true;
            } else {
                gates[i].params[0] = reduced;
            }
        }
        if (remove) {
            gates.erase(gates.begin() + static_cast<std::ptrdiff_t>(i));
            changed = true;
        } else {
            ++i;
        }
    }

    return changed;
}

}  // namespace

Circuit optimize(const Circuit& circuit) {
    Circuit out = circuit;
    long phase_flips = 0;
    while (rewrite_once(out.gates, phase_flips)) {
    }
    // Parity combines with flips recorded by an earlier rewrite of the same
    // circuit.
    const auto it = out.metadata.find("global_phase_flips");
    const bool had_flip = it != out.metadata.end() && it->second == "1";
    if ((phase_flips % 2 != 0) != had_flip) {
        out.metadata["global_phase_flips"] = "1";
    } else {
        out.metadata.erase("global_phase_flips");
    }
    return out;
}

Circuit merge_graph_kernel(const GraphInstance& a, const GraphInstance& b, double gamma) {
    if (a.n != b.n) {
        throw shape_error("graph vertex counts differ: " + std::to_string(a.n) + " vs " +
                          std::to_string(b.n));
    }
    a.validate();
    b.validate();
    const double a_max = a.max_abs_weight();
    const double b_max = b.max_abs_weight();
    if (a_max == 0.0 || b_max == 0.0) {
        throw domain_error("graph weight normalization requires a nonzero weight");
    }
    Circuit out(a.n);
    for (int j = 0; j < a.n; ++j) {
        for (int k = j + 1; k < a.n; ++k) {
            if (a.weight(j, k) == 0.0 && b.weight(j, k) == 0.0) continue;
            const double delta = a.weight(j, k) / a_max - b.weight(j, k) / b_max;
            out.append(Gate::ms(j, k, gamma * delta));
        }
    }
    return out;
}

}  // namespace qsvm
