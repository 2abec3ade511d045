#pragma once

#include <complex>
#include <cstddef>

namespace qsvm::simd {

using c64 = std::complex<double>;

// Low-level amplitude-update kernels behind the state vector. `bitpos` is a
// bit position inside the basis-state index (0 = least significant bit).
//
// The scalar set is the reference implementation. Vector variants must keep
// the exact per-element operation order of the scalar code and are built with
// FP contraction off, so their results are bit-identical to scalar; the test
// suite enforces this on random states.
struct KernelSet {
    const char* name;

    // In-place 2x2 unitary on the amplitude pairs (i, i | 1<<bitpos).
    void (*apply_1q)(c64* amps, std::size_t dim, unsigned bitpos, c64 u00, c64 u01, c64 u10,
                     c64 u11);

    // In-place exp(-i*chi*XX) on two bit positions: couples the pairs
    // (x, x ^ mask_a ^ mask_b) with [[c, -i s], [-i s, c]].
    void (*apply_xx)(c64* amps, std::size_t dim, unsigned bitpos_a, unsigned bitpos_b,
                     double cos_chi, double sin_chi);

    void (*born_probabilities)(const c64* amps, std::size_t dim, double* out);

    double (*norm_squared)(const c64* amps, std::size_t dim);
};

const KernelSet& scalar_kernels();

// nullptr when the build or the running CPU lacks AVX2.
const KernelSet* avx2_kernels();

// Runtime pick: AVX2 when available, otherwise scalar. The environment
// variable QSVM_KERNELS=scalar|avx2 overrides the choice.
const KernelSet& active_kernels();

}  // namespace qsvm::simd
