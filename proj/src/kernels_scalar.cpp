#include "qsvm/simd.hpp"

// Reference kernels. The arithmetic below is written out in real components,
// in a fixed order; the AVX2 variants replicate that order exactly (both
// translation units are compiled with FP contraction off), which is what
// makes the scalar/vector equivalence bit-exact.

namespace qsvm::simd {
namespace {

void apply_1q_scalar(c64* amps, std::size_t dim, unsigned bitpos, c64 u00, c64 u01, c64 u10,
                     c64 u11) {
    const std::size_t mask = std::size_t{1} << bitpos;
    const std::size_t lo_mask = mask - 1;
    const std::size_t hi_mask = ~lo_mask;
    const double u00r = u00.real(), u00i = u00.imag();
    const double u01r = u01.real(), u01i = u01.imag();
    const double u10r = u10.real(), u10i = u10.imag();
    const double u11r = u11.real(), u11i = u11.imag();

    for (std::size_t i = 0; i < dim / 2; ++i) {
        const std::size_t i0 = ((i & hi_mask) << 1) | (i & lo_mask);
        const std::size_t i1 = i0 | mask;
        const double a0r = amps[i0].real(), a0i = amps[i0].imag();
        const double a1r = amps[i1].real(), a1i = amps[i1].imag();
        amps[i0] = c64((u00r * a0r - u00i * a0i) + (u01r * a1r - u01i * a1i),
                       (u00r * a0i + u00i * a0r) + (u01r * a1i + u01i * a1r));
        amps[i1] = c64((u10r * a0r - u10i * a0i) + (u11r * a1r - u11i * a1i),
                       (u10r * a0i + u10i * a0r) + (u11r * a1i + u11i * a1r));
    }
}

// Rotation on the index pairs (u, v = u ^ mask_a ^ mask_b):
//   u' = c*u - i*s*v,  v' = c*v - i*s*u
// which in components is u'_re = c*u_re + s*v_im, u'_im = c*u_im - s*v_re.
void xx_update_run(c64* u, c64* v, std::size_t count, double c, double s) {
    for (std::size_t t = 0; t < count; ++t) {
        const double ur = u[t].real(), ui = u[t].imag();
        const double vr = v[t].real(), vi = v[t].imag();
        u[t] = c64(c * ur + s * vi, c * ui - s * vr);
        v[t] = c64(c * vr + s * ui, c * vi - s * ur);
    }
}

void apply_xx_scalar(c64* amps, std::size_t dim, unsigned bitpos_a, unsigned bitpos_b,
                     double cos_chi, double sin_chi) {
    const unsigned lo = bitpos_a < bitpos_b ? bitpos_a : bitpos_b;
    const unsigned hi = bitpos_a < bitpos_b ? bitpos_b : bitpos_a;
    const std::size_t mask_a = std::size_t{1} << bitpos_a;
    const std::size_t mask_b = std::size_t{1} << bitpos_b;
    const std::size_t lo_mask = (std::size_t{1} << lo) - 1;
    const std::size_t mid_mask = ((std::size_t{1} << (hi - 1)) - 1) ^ lo_mask;
    const std::size_t hi_mask = ~((std::size_t{1} << (hi - 1)) - 1);
    const std::size_t run = std::size_t{1} << lo;

    for (std::size_t i = 0; i < dim / 4; i += run) {
        const std::size_t x00 = ((i & hi_mask) << 2) | ((i & mid_mask) << 1) | (i & lo_mask);
        xx_update_run(amps + x00, amps + (x00 | mask_a | mask_b), run, cos_chi, sin_chi);
        xx_update_run(amps + (x00 | mask_a), amps + (x00 | mask_b), run, cos_chi, sin_chi);
    }
}

void born_probabilities_scalar(const c64* amps, std::size_t dim, double* out) {
    for (std::size_t i = 0; i < dim; ++i) {
        const double re = amps[i].real(), im = amps[i].imag();
        out[i] = re * re + im * im;
    }
}

double norm_squared_scalar(const c64* amps, std::size_t dim) {
    double total = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        const double re = amps[i].real(), im = amps[i].imag();
        total += re * re + im * im;
    }
    return total;
}

}  // namespace

const KernelSet& scalar_kernels() {
    static const KernelSet set{
        "scalar", apply_1q_scalar, apply_xx_scalar, born_probabilities_scalar,
        norm_squared_scalar,
    };
    return set;
}

}  // namespace qsvm::simd
