#pragma once

#include <array>

#include "qsvm/circuit.hpp"
#include "qsvm/graph.hpp"

namespace qsvm {

inline constexpr double kDefaultGamma = 0.8;

// Pixel-derived rotation angles x1..x4, each in [0, pi].
using RyAngles = std::array<double, 4>;

// Raw amplitude-encoding input (x1, x2, x3, 0.25): three scaled intensities
// plus the constant pad that keeps the norm away from zero. Components must
// be nonnegative; normalization happens inside amplitude_angles.
using AmplitudeInput = std::array<double, 4>;

// The printed formula for beta2 omits the square root; with it the prepared
// state fails to reproduce the normalized input for generic vectors (the
// state-vector check in the tests shows this directly). CorrectedSqrt is the
// default; Verbatim keeps the printed form selectable.
enum class Beta2Form { CorrectedSqrt, Verbatim };

struct AmplitudeAngles {
    std::array<double, 5> a;   // (beta2, -beta1/2, beta1/2, -beta0/2, beta0/2)
    double beta0 = 0;
    double beta1 = 0;
    double beta2 = 0;
};

// Four-qubit product encoding: one RY(x_i) per qubit.
Circuit encode_ry(const RyAngles& x);

// Same RY layer followed by CX(0,1) and CX(2,3). The mirror construction
// cancels the CX layer in the noiseless case, so its exact kernel matches
// encode_ry; the extra entanglers exist to stress two-qubit noise.
Circuit encode_ry_cx(const RyAngles& x);

std::array<double, 4> normalize_amplitude_input(const AmplitudeInput& x);

AmplitudeAngles amplitude_angles(const AmplitudeInput& x,
                                 Beta2Form form = Beta2Form::CorrectedSqrt);

// Two-qubit amplitude encoding: prepares a state whose computational-basis
// amplitudes equal the normalized input, up to global phase.
Circuit encode_amplitude(const AmplitudeAngles& angles);
Circuit encode_amplitude(const AmplitudeInput& x, Beta2Form form = Beta2Form::CorrectedSqrt);

// Graph embedding: one MS(gamma * g_jk / max|g|) per nonzero edge, edges in
// lexicographic (j, k) order. Throws on an all-zero weight matrix.
Circuit encode_graph(const GraphInstance& g, double gamma = kDefaultGamma);

// Closed-form noiseless kernels, used as oracles against the simulator path.
double analytic_kernel_ry(const RyAngles& x, const RyAngles& y);
double analytic_kernel_amplitude(const AmplitudeInput& x, const AmplitudeInput& y);
// Brute-force evaluation over the 2^n Ising energies; independent of the
// circuit simulator.
double analytic_kernel_graph(const GraphInstance& a, const GraphInstance& b,
                             double gamma = kDefaultGamma);

}  // namespace qsvm
