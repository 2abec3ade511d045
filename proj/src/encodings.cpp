#include "qsvm/encodings.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "qsvm/data.hpp"
#include "qsvm/errors.hpp"

namespace qsvm {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEpsilon = 1e-12;   // guards the beta denominators against 0/0

double clamped_asin(double value) { return std::asin(std::clamp(value, -1.0, 1.0)); }

}  // namespace

Circuit encode_ry(const RyAngles& x) {
    Circuit circuit(4);
    for (int q = 0; q < 4; ++q) circuit.append(Gate::ry(q, x[static_cast<std::size_t>(q)]));
    return circuit;
}

Circuit encode_ry_cx(const RyAngles& x) {
    Circuit circuit = encode_ry(x);
    circuit.append(Gate::cx(0, 1));
    circuit.append(Gate::cx(2, 3));
    return circuit;
}

std::array<double, 4> normalize_amplitude_input(const AmplitudeInput& x) {
    double norm_sq = 0.0;
    for (double component : x) {
        if (component < 0.0) {
            throw domain_error("amplitude encoding requires nonnegative components");
        }
        norm_sq += component * component;
    }
    if (norm_sq == 0.0) throw domain_error("amplitude encoding input has zero norm");
    const double norm = std::sqrt(norm_sq);
    return {x[0] / norm, x[1] / norm, x[2] / norm, x[3] / norm};
}

AmplitudeAngles amplitude_angles(const AmplitudeInput& x, Beta2Form form) {
    const std::array<double, 4> xbar = normalize_amplitude_input(x);
    AmplitudeAngles result;
    result.beta0 = 2.0 * clamped_asin(xbar[1] / std::sqrt(xbar[0] * xbar[0] +
                                                          xbar[1] * xbar[1] + kEpsilon));
    result.beta1 = 2.0 * clamped_asin(xbar[3] / std::sqrt(xbar[2] * xbar[2] +
                                                          xbar[3] * xbar[3] + kEpsilon));
    const double tail_mass = xbar[2] * xbar[2] + xbar[3] * xbar[3];
    result.beta2 = form == Beta2Form::CorrectedSqrt ? 2.0 * clamped_asin(std::sqrt(tail_mass))
                                                    : 2.0 * clamped_asin(tail_mass);
    result.a = {result.beta2, -result.beta1 / 2.0, result.beta1 / 2.0, -result.beta0 / 2.0,
                result.beta0 / 2.0};
    return result;
}

Circuit encode_amplitude(const AmplitudeAngles& angles) {
    const auto& a = angles.a;
    Circuit circuit(2);
    circuit.append(Gate::ry(0, a[0]));
    circuit.append(Gate::cx(0, 1));
    circuit.append(Gate::ry(1, a[1]));
    circuit.append(Gate::cx(0, 1));
    circuit.append(Gate::rx(0, kPi));
    circuit.append(Gate::ry(1, a[2]));
    circuit.append(Gate::cx(0, 1));
    circuit.append(Gate::ry(1, a[3]));
    circuit.append(Gate::cx(0, 1));
    circuit.append(Gate::rx(0, kPi));
    circuit.append(Gate::ry(1, a[4]));
    return circuit;
}

Circuit encode_amplitude(const AmplitudeInput& x, Beta2Form form) {
    return encode_amplitude(amplitude_angles(x, form));
}

Circuit encode_graph(const GraphInstance& g, double gamma) {
    g.validate();
    const double max_weight = g.max_abs_weight();
    if (max_weight == 0.0) {
        throw domain_error("graph weight normalization requires a nonzero weight");
    }
    Circuit circuit(g.n);
    for (int j = 0; j < g.n; ++j) {
        for (int k = j + 1; k < g.n; ++k) {
            if (g.weight(j, k) == 0.0) continue;
            circuit.append(Gate::ms(j, k, gamma * g.weight(j, k) / max_weight));
        }
    }
    return circuit;
}

double analytic_kernel_ry(const RyAngles& x, const RyAngles& y) {
    double product = 1.0;
    for (std::size_t i = 0; i < 4; ++i) {
        const double c = std::cos((x[i] - y[i]) / 2.0);
        product *= c * c;
    }
    return product;
}

double analytic_kernel_amplitude(const AmplitudeInput& x, const AmplitudeInput& y) {
    const std::array<double, 4> xbar = normalize_amplitude_input(x);
    const std::array<double, 4> ybar = normalize_amplitude_input(y);
    double dot = 0.0;
    for (std::size_t i = 0; i < 4; ++i) dot += xbar[i] * ybar[i];
    return dot * dot;
}

double analytic_kernel_graph(const GraphInstance& a, const GraphInstance& b, double gamma) {
    if (a.n != b.n) {
        throw shape_error("graph vertex counts differ: " + std::to_string(a.n) + " vs " +
                          std::to_string(b.n));
    }
    const double a_max = a.max_abs_weight();
    const double b_max = b.max_abs_weight();
    if (a_max == 0.0 || b_max == 0.0) {
        throw domain_error("graph weight normalization requires a nonzero weight");
    }
    const std::vector<double> spectrum_a = ising_spectrum(a);
    const std::vector<double> spectrum_b = ising_spectrum(b);
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t x = 0; x < spectrum_a.size(); ++x) {
        const double phase = -gamma * (spectrum_a[x] / a_max - spectrum_b[x] / b_max);
        sum += std::complex<double>(std::cos(phase), std::sin(phase));
    }
    sum /= static_cast<double>(spectrum_a.size());
    return std::norm(sum);
}

}  // namespace qsvm
