#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qsvm/circuit.hpp"
#include "qsvm/noise.hpp"

namespace qsvm {

enum class TranspileMode { NonOptimized, Optimized };

const char* transpile_mode_name(TranspileMode mode);

// How kernel entries are estimated: exact Born probability, or all-zeros
// frequency over a finite number of shots, optionally through the noise
// channel. Noise requires shot mode (the trajectory method is sampling).
struct EstimationMode {
    bool exact = true;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    std::optional<NoiseConfig> noise;

    static EstimationMode exact_mode();
    static EstimationMode shot_mode(std::uint64_t shots, std::uint64_t seed);
    static EstimationMode noisy_mode(std::uint64_t shots, std::uint64_t seed, NoiseConfig cfg);

    std::string describe() const;
};

struct KernelMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> entries;   // row-major, all in [0, 1]
    std::vector<std::string> row_ids;
    std::vector<std::string> col_ids;
    std::string mode;

    KernelMatrix() = default;
    KernelMatrix(std::vector<std::string> row_ids_in, std::vector<std::string> col_ids_in);

    double at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
    double& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
    std::span<const double> row(std::size_t i) const;
};

// U(x) followed by adjoint(U(y)), in the requested transpilation mode.
// NonOptimized decomposes CX gates and performs no other rewriting.
// Optimized first runs the peephole passes on the raw concatenation (this is
// where mirrored CX layers cancel), then decomposes any surviving CX, then
// rewrites once more to merge rotations exposed by the decomposition.
Circuit mirror_circuit(const Circuit& encode_x, const Circuit& encode_y, TranspileMode mode);

// All-zeros return probability of the circuit from |0...0>, exact or
// shot-estimated per the mode (mode.seed is used directly).
double kernel_entry(const Circuit& circuit, const EstimationMode& mode);

// Builds the mirror circuit for the sample pair (i, j).
using PairCircuitBuilder = std::function<Circuit(std::size_t, std::size_t)>;

struct KernelOptions {
    EstimationMode mode = EstimationMode::exact_mode();
    // Row and column sets are the same samples: exact mode then fills the
    // upper triangle and mirrors it.
    bool symmetric = false;
    // Shot mode normally estimates diagonal entries by running the trivial
    // mirror circuit, like the hardware runs did; pinning writes 1.0 instead.
    bool pin_diagonal = false;
    int threads = 1;
};

// Entry (i, j) comes from builder(i, j). Per-entry seeds are derived from
// (mode.seed, row id, col id), so thread count and evaluation order never
// change the result.
KernelMatrix kernel_matrix(const std::vector<std::string>& row_ids,
                           const std::vector<std::string>& col_ids,
                           const PairCircuitBuilder& builder, const KernelOptions& options);

// Chebyshev entrywise distance max_ij |A_ij - B_ij|.
double matrix_distance(const KernelMatrix& a, const KernelMatrix& b);

double bhattacharyya_coefficient(std::span<const double> p, std::span<const double> q);

// Bhattacharyya coefficient between the noisy empirical distribution
// (trajectory-sampled with `shots`) and the exact Born distribution. The
// empirical side is SPAM-corrected -- readout flips are excluded, matching
// how the hardware fidelity figures were reported -- so the quantity tracks
// gate errors. With the channel off the distributions coincide and the value
// is 1 up to rounding.
double classical_fidelity(const Circuit& circuit, const NoiseConfig& cfg, std::uint64_t shots,
                          std::uint64_t seed);

std::string kernel_to_csv(const KernelMatrix& m);
KernelMatrix kernel_from_csv(std::istream& in);
std::string kernel_to_json(const KernelMatrix& m);
KernelMatrix kernel_from_json(const std::string& text);

}  // namespace qsvm
