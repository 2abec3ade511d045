#include "qsvm/simd.hpp"

// AVX2 kernels: two interleaved complex doubles per __m256d. Each lane
// performs the same multiply/add sequence as the scalar reference (FP
// contraction is off for this translation unit), so results match the scalar
// kernels bit-for-bit.

#if defined(QSVM_HAVE_AVX2)

#include <immintrin.h>

namespace qsvm::simd {
namespace {

// [re, im, re, im] -> [im, re, im, re]
inline __m256d swap_halves(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

// Complex multiply of each lane-pair of `a` by the scalar (cr + i*ci):
// even lanes get cr*re - ci*im, odd lanes cr*im + ci*re.
inline __m256d cmul_scalar(__m256d a, __m256d cr, __m256d ci) {
    return _mm256_addsub_pd(_mm256_mul_pd(a, cr), _mm256_mul_pd(swap_halves(a), ci));
}

void apply_1q_avx2(c64* amps, std::size_t dim, unsigned bitpos, c64 u00, c64 u01, c64 u10,
                   c64 u11) {
    double* data = reinterpret_cast<double*>(amps);
    if (bitpos == 0) {
        // Partners are adjacent: one vector holds a whole (a0, a1) pair.
        const __m256d cr1 = _mm256_setr_pd(u00.real(), u00.real(), u10.real(), u10.real());
        const __m256d ci1 = _mm256_setr_pd(u00.imag(), u00.imag(), u10.imag(), u10.imag());
        const __m256d cr2 = _mm256_setr_pd(u01.real(), u01.real(), u11.real(), u11.real());
        const __m256d ci2 = _mm256_setr_pd(u01.imag(), u01.imag(), u11.imag(), u11.imag());
        for (std::size_t k = 0; k < dim; k += 2) {
            const __m256d pair = _mm256_loadu_pd(data + 2 * k);
            const __m256d a0 = _mm256_permute2f128_pd(pair, pair, 0x00);
            const __m256d a1 = _mm256_permute2f128_pd(pair, pair, 0x11);
            const __m256d out =
                _mm256_add_pd(cmul_scalar(a0, cr1, ci1), cmul_scalar(a1, cr2, ci2));
            _mm256_storeu_pd(data + 2 * k, out);
        }
        return;
    }

    const std::size_t mask = std::size_t{1} << bitpos;
    const std::size_t lo_mask = mask - 1;
    const std::size_t hi_mask = ~lo_mask;
    const __m256d u00r = _mm256_set1_pd(u00.real()), u00i = _mm256_set1_pd(u00.imag());
    const __m256d u01r = _mm256_set1_pd(u01.real()), u01i = _mm256_set1_pd(u01.imag());
    const __m256d u10r = _mm256_set1_pd(u10.real()), u10i = _mm256_set1_pd(u10.imag());
    const __m256d u11r = _mm256_set1_pd(u11.real()), u11i = _mm256_set1_pd(u11.imag());

    // i0 values form contiguous runs of length `mask` (>= 2 here).
    for (std::size_t i = 0; i < dim / 2; i += mask) {
        const std::size_t i0 = ((i & hi_mask) << 1) | (i & lo_mask);
        double* p0 = data + 2 * i0;
        double* p1 = data + 2 * (i0 | mask);
        for (std::size_t t = 0; t < mask; t += 2) {
            const __m256d a0 = _mm256_loadu_pd(p0 + 2 * t);
            const __m256d a1 = _mm256_loadu_pd(p1 + 2 * t);
            const __m256d n0 =
                _mm256_add_pd(cmul_scalar(a0, u00r, u00i), cmul_scalar(a1, u01r, u01i));
            const __m256d n1 =
                _mm256_add_pd(cmul_scalar(a0, u10r, u10i), cmul_scalar(a1, u11r, u11i));
            _mm256_storeu_pd(p0 + 2 * t, n0);
            _mm256_storeu_pd(p1 + 2 * t, n1);
        }
    }
}

// u' = c*u - i*s*v in components: u'_re = c*u_re + s*v_im = c*u_re - (-s)*v_im,
// so addsub with coefficient -s reproduces the scalar order exactly.
inline void xx_update_run_avx2(double* u, double* v, std::size_t count, __m256d c_vec,
                               __m256d neg_s_vec, double c, double s) {
    std::size_t t = 0;
    for (; t + 2 <= count; t += 2) {
        const __m256d uu = _mm256_loadu_pd(u + 2 * t);
        const __m256d vv = _mm256_loadu_pd(v + 2 * t);
        const __m256d nu = _mm256_addsub_pd(_mm256_mul_pd(uu, c_vec),
                                            _mm256_mul_pd(swap_halves(vv), neg_s_vec));
        const __m256d nv = _mm256_addsub_pd(_mm256_mul_pd(vv, c_vec),
                                            _mm256_mul_pd(swap_halves(uu), neg_s_vec));
        _mm256_storeu_pd(u + 2 * t, nu);
        _mm256_storeu_pd(v + 2 * t, nv);
    }
    for (; t < count; ++t) {
        const double ur = u[2 * t], ui = u[2 * t + 1];
        const double vr = v[2 * t], vi = v[2 * t + 1];
        u[2 * t] = c * ur + s * vi;
        u[2 * t + 1] = c * ui - s * vr;
        v[2 * t] = c * vr + s * ui;
        v[2 * t + 1] = c * vi - s * ur;
    }
}

void apply_xx_avx2(c64* amps, std::size_t dim, unsigned bitpos_a, unsigned bitpos_b,
                   double cos_chi, double sin_chi) {
    double* data = reinterpret_cast<double*>(amps);
    const unsigned lo = bitpos_a < bitpos_b ? bitpos_a : bitpos_b;
    const unsigned hi = bitpos_a < bitpos_b ? bitpos_b : bitpos_a;
    const std::size_t mask_a = std::size_t{1} << bitpos_a;
    const std::size_t mask_b = std::size_t{1} << bitpos_b;
    const std::size_t lo_mask = (std::size_t{1} << lo) - 1;
    const std::size_t mid_mask = ((std::size_t{1} << (hi - 1)) - 1) ^ lo_mask;
    const std::size_t hi_mask = ~((std::size_t{1} << (hi - 1)) - 1);
    const std::size_t run = std::size_t{1} << lo;
    const __m256d c_vec = _mm256_set1_pd(cos_chi);
    const __m256d neg_s_vec = _mm256_set1_pd(-sin_chi);

    for (std::size_t i = 0; i < dim / 4; i += run) {
        const std::size_t x00 = ((i & hi_mask) << 2) | ((i & mid_mask) << 1) | (i & lo_mask);
        xx_update_run_avx2(data + 2 * x00, data + 2 * (x00 | mask_a | mask_b), run, c_vec,
                           neg_s_vec, cos_chi, sin_chi);
        xx_update_run_avx2(data + 2 * (x00 | mask_a), data + 2 * (x00 | mask_b), run, c_vec,
                           neg_s_vec, cos_chi, sin_chi);
    }
}

void born_probabilities_avx2(const c64* amps, std::size_t dim, double* out) {
    const double* data = reinterpret_cast<const double*>(amps);
    std::size_t i = 0;
    for (; i + 4 <= dim; i += 4) {
        const __m256d sq_a = _mm256_mul_pd(_mm256_loadu_pd(data + 2 * i),
                                           _mm256_loadu_pd(data + 2 * i));
        const __m256d sq_b = _mm256_mul_pd(_mm256_loadu_pd(data + 2 * i + 4),
                                           _mm256_loadu_pd(data + 2 * i + 4));
        // hadd yields [p0, p2, p1, p3]; restore index order.
        const __m256d packed = _mm256_hadd_pd(sq_a, sq_b);
        _mm256_storeu_pd(out + i, _mm256_permute4x64_pd(packed, 0xD8));
    }
    for (; i < dim; ++i) {
        const double re = data[2 * i], im = data[2 * i + 1];
        out[i] = re * re + im * im;
    }
}

// Four-lane accumulation; summation order differs from scalar, which is fine
// for a diagnostic quantity (tests compare with a tolerance, not bitwise).
double norm_squared_avx2(const c64* amps, std::size_t dim) {
    const double* data = reinterpret_cast<const double*>(amps);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= dim; i += 2) {
        const __m256d v = _mm256_loadu_pd(data + 2 * i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < dim; ++i) {
        const double re = data[2 * i], im = data[2 * i + 1];
        total += re * re + im * im;
    }
    return total;
}

}  // namespace

const KernelSet* avx2_kernels_impl() {
    static const KernelSet set{
        "avx2", apply_1q_avx2, apply_xx_avx2, born_probabilities_avx2, norm_squared_avx2,
    };
    return &set;
}

}  // namespace qsvm::simd

#else

namespace qsvm::simd {
const KernelSet* avx2_kernels_impl() { return nullptr; }
}  // namespace qsvm::simd

#endif
