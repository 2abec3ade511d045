#include "qsvm/circuit.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "qsvm/errors.hpp"

namespace qsvm {

const char* gate_kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::Rphi: return "RPHI";
        case GateKind::Rx: return "RX";
        case GateKind::Ry: return "RY";
        case GateKind::Cx: return "CX";
        case GateKind::Ms: return "MS";
        case GateKind::H: return "H";
    }
    return "?";
}

Gate Gate::rphi(int qubit, double phi, double theta) {
    return Gate{GateKind::Rphi, {qubit, -1}, {phi, theta}};
}

Gate Gate::rx(int qubit, double theta) { return Gate{GateKind::Rx, {qubit, -1}, {theta, 0}}; }

Gate Gate::ry(int qubit, double theta) { return Gate{GateKind::Ry, {qubit, -1}, {theta, 0}}; }

Gate Gate::cx(int control, int target) { return Gate{GateKind::Cx, {control, target}, {0, 0}}; }

Gate Gate::ms(int a, int b, double chi) { return Gate{GateKind::Ms, {a, b}, {chi, 0}}; }

Gate Gate::h(int qubit) { return Gate{GateKind::H, {qubit, -1}, {0, 0}}; }

int Gate::param_count() const {
    switch (kind) {
        case GateKind::Rphi: return 2;
        case GateKind::Rx:
        case GateKind::Ry:
        case GateKind::Ms: return 1;
        case GateKind::Cx:
        case GateKind::H: return 0;
    }
    return 0;
}

Gate Gate::inverse() const {
    Gate inv = *this;
    switch (kind) {
        case GateKind::Rphi: inv.params[1] = -params[1]; break;
        case GateKind::Rx:
        case GateKind::Ry:
        case GateKind::Ms: inv.params[0] = -params[0]; break;
        case GateKind::Cx:
        case GateKind::H: break;   // self-inverse
    }
    return inv;
}

bool Gate::overlaps(const Gate& other) const {
    for (int q : qubits) {
        if (q >= 0 && other.acts_on(q)) return true;
    }
    return false;
}

bool Gate::same_qubits(const Gate& other) const {
    if (arity() != other.arity()) return false;
    if (arity() == 1) return qubits[0] == other.qubits[0];
    return (qubits[0] == other.qubits[0] && qubits[1] == other.qubits[1]) ||
           (qubits[0] == other.qubits[1] && qubits[1] == other.qubits[0]);
}

void Circuit::append(Gate gate) {
    const int arity = gate.arity();
    for (int k = 0; k < arity; ++k) {
        if (gate.qubits[k] < 0 || gate.qubits[k] >= n_qubits) {
            throw index_error(std::string(gate_kind_name(gate.kind)) + " qubit " +
                              std::to_string(gate.qubits[k]) + " out of range for " +
                              std::to_string(n_qubits) + " qubits");
        }
    }
    if (arity == 2 && gate.qubits[0] == gate.qubits[1]) {
        throw index_error(std::string(gate_kind_name(gate.kind)) +
                          " requires two distinct qubits");
    }
    for (int k = 0; k < gate.param_count(); ++k) {
        if (!std::isfinite(gate.params[k])) {
            throw domain_error(std::string(gate_kind_name(gate.kind)) + " angle must be finite");
        }
    }
    gates.push_back(gate);
}

Circuit concat(const Circuit& first, const Circuit& second) {
    if (first.n_qubits != second.n_qubits) {
        throw shape_error("cannot concatenate circuits on " + std::to_string(first.n_qubits) +
                          " and " + std::to_string(second.n_qubits) + " qubits");
    }
    Circuit out = first;
    out.gates.insert(out.gates.end(), second.gates.begin(), second.gates.end());
    return out;
}

Circuit adjoint(const Circuit& circuit) {
    Circuit out(circuit.n_qubits);
    out.gates.reserve(circuit.gates.size());
    for (auto it = circuit.gates.rbegin(); it != circuit.gates.rend(); ++it) {
        out.gates.push_back(it->inverse());
    }
    return out;
}

std::map<GateKind, std::size_t> count_gates(const Circuit& circuit) {
    std::map<GateKind, std::size_t> counts{
        {GateKind::Rphi, 0}, {GateKind::Rx, 0}, {GateKind::Ry, 0},
        {GateKind::Cx, 0},   {GateKind::Ms, 0}, {GateKind::H, 0},
    };
    for (const Gate& gate : circuit.gates) ++counts[gate.kind];
    return counts;
}

std::size_t count_two_qubit_gates(const Circuit& circuit) {
    std::size_t total = 0;
    for (const Gate& gate : circuit.gates) {
        if (gate.arity() == 2) ++total;
    }
    return total;
}

namespace {

std::string format_angle(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

GateKind parse_kind(const std::string& token, std::size_t line) {
    if (token == "RPHI") return GateKind::Rphi;
    if (token == "RX") return GateKind::Rx;
    if (token == "RY") return GateKind::Ry;
    if (token == "CX") return GateKind::Cx;
    if (token == "MS") return GateKind::Ms;
    if (token == "H") return GateKind::H;
    throw parse_error("unknown gate kind '" + token + "'", line);
}

std::vector<std::string> split_commas(const std::string& field) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = field.find(',', start);
        if (comma == std::string::npos) {
            parts.push_back(field.substr(start));
            return parts;
        }
        parts.push_back(field.substr(start, comma - start));
        start = comma + 1;
    }
}

int parse_qubit(const std::string& token, std::size_t line) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || value < 0) {
        throw parse_error("invalid qubit index '" + token + "'", line);
    }
    return value;
}

double parse_angle(const std::string& token, std::size_t line) {
    try {
        std::size_t consumed = 0;
        const double value = std::stod(token, &consumed);
        if (consumed != token.size()) throw std::invalid_argument(token);
        return value;
    } catch (const std::exception&) {
        throw parse_error("invalid angle '" + token + "'", line);
    }
}

}  // namespace

std::string circuit_to_text(const Circuit& circuit) {
    std::ostringstream out;
    out << "# qubits: " << circuit.n_qubits << "\n";
    for (const Gate& gate : circuit.gates) {
        out << gate_kind_name(gate.kind) << ' ' << gate.qubits[0];
        if (gate.arity() == 2) out << ',' << gate.qubits[1];
        if (gate.param_count() >= 1) out << ' ' << format_angle(gate.params[0]);
        if (gate.param_count() == 2) out << ',' << format_angle(gate.params[1]);
        out << '\n';
    }
    return out.str();
}

Circuit circuit_from_stream(std::istream& in) {
    std::vector<Gate> gates;
    int declared_qubits = -1;
    int max_index = -1;
    std::string line;
    std::size_t line_number = 0;

    while (std::getline(in, line)) {
        ++line_number;
        if (line.rfind("# qubits:", 0) == 0) {
            declared_qubits = parse_qubit(line.substr(line.find(':') + 2), line_number);
            continue;
        }
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream fields(line);
        std::string kind_token, qubit_field, angle_field;
        if (!(fields >> kind_token)) continue;   // blank or comment-only line
        const GateKind kind = parse_kind(kind_token, line_number);
        if (!(fields >> qubit_field)) throw parse_error("missing qubit field", line_number);

        const std::vector<std::string> qubit_tokens = split_commas(qubit_field);
        Gate gate;
        gate.kind = kind;
        const int arity = (kind == GateKind::Cx || kind == GateKind::Ms) ? 2 : 1;
        if (static_cast<int>(qubit_tokens.size()) != arity) {
            throw parse_error(std::string(gate_kind_name(kind)) + " expects " +
                                  std::to_string(arity) + " qubit(s)",
                              line_number);
        }
        for (int k = 0; k < arity; ++k) {
            gate.qubits[static_cast<std::size_t>(k)] = parse_qubit(qubit_tokens[k], line_number);
            max_index = std::max(max_index, gate.qubits[static_cast<std::size_t>(k)]);
        }

        const int expected_angles = gate.param_count();
        if (expected_angles > 0) {
            if (!(fields >> angle_field)) throw parse_error("missing angle field", line_number);
            const std::vector<std::string> angle_tokens = split_commas(angle_field);
            if (static_cast<int>(angle_tokens.size()) != expected_angles) {
                throw parse_error(std::string(gate_kind_name(kind)) + " expects " +
                                      std::to_string(expected_angles) + " angle(s)",
                                  line_number);
            }
            for (int k = 0; k < expected_angles; ++k) {
                gate.params[static_cast<std::size_t>(k)] =
                    parse_angle(angle_tokens[k], line_number);
            }
        }
        std::string extra;
        if (fields >> extra) throw parse_error("trailing content '" + extra + "'", line_number);
        gates.push_back(gate);
    }

    Circuit circuit(declared_qubits >= 0 ? declared_qubits : max_index + 1);
    for (const Gate& gate : gates) circuit.append(gate);
    return circuit;
}

Circuit circuit_from_text(const std::string& text) {
    std::istringstream in(text);
    return circuit_from_stream(in);
}

}  // namespace qsvm
