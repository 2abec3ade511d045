#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstring>
#include <vector>

#include "qsvm/rng.hpp"
#include "qsvm/simd.hpp"

using namespace qsvm;

namespace {

std::vector<simd::c64> random_state(int n_qubits, Rng& rng) {
    std::vector<simd::c64> amps(std::size_t{1} << n_qubits);
    double norm_sq = 0.0;
    for (auto& a : amps) {
        a = simd::c64{rng.uniform() - 0.5, rng.uniform() - 0.5};
        norm_sq += std::norm(a);
    }
    const double scale = 1.0 / std::sqrt(norm_sq);
    for (auto& a : amps) a *= scale;
    return amps;
}

bool bit_identical(const std::vector<simd::c64>& a, const std::vector<simd::c64>& b) {
    return std::memcmp(a.data(), b.data(), a.size() * sizeof(simd::c64)) == 0;
}

}  // namespace

TEST_CASE("vector kernels reproduce the scalar reference bit-for-bit") {
    const simd::KernelSet* vec = simd::avx2_kernels();
    if (vec == nullptr) {
        MESSAGE("AVX2 unavailable on this machine; scalar-only configuration");
        CHECK(std::string(simd::active_kernels().name) == "scalar");
        return;
    }
    const simd::KernelSet& ref = simd::scalar_kernels();
    Rng rng(314159);

    SUBCASE("one-qubit kernel, every bit position") {
        for (int n = 1; n <= 6; ++n) {
            for (unsigned bitpos = 0; bitpos < static_cast<unsigned>(n); ++bitpos) {
                std::vector<simd::c64> a = random_state(n, rng);
                std::vector<simd::c64> b = a;
                // A random non-unitary 2x2 stresses the arithmetic path.
                const simd::c64 u00{rng.uniform(), rng.uniform()};
                const simd::c64 u01{rng.uniform(), -rng.uniform()};
                const simd::c64 u10{-rng.uniform(), rng.uniform()};
                const simd::c64 u11{rng.uniform(), rng.uniform()};
                ref.apply_1q(a.data(), a.size(), bitpos, u00, u01, u10, u11);
                vec->apply_1q(b.data(), b.size(), bitpos, u00, u01, u10, u11);
                CHECK(bit_identical(a, b));
            }
        }
    }

    SUBCASE("XX kernel, every bit-position pair") {
        for (int n = 2; n <= 6; ++n) {
            for (unsigned pa = 0; pa < static_cast<unsigned>(n); ++pa) {
                for (unsigned pb = 0; pb < static_cast<unsigned>(n); ++pb) {
                    if (pa == pb) continue;
                    std::vector<simd::c64> a = random_state(n, rng);
                    std::vector<simd::c64> b = a;
                    const double chi = (rng.uniform() - 0.5) * 6.0;
                    ref.apply_xx(a.data(), a.size(), pa, pb, std::cos(chi), std::sin(chi));
                    vec->apply_xx(b.data(), b.size(), pa, pb, std::cos(chi), std::sin(chi));
                    CHECK(bit_identical(a, b));
                }
            }
        }
    }

    SUBCASE("Born probabilities are bit-identical") {
        for (int n = 1; n <= 7; ++n) {
            const std::vector<simd::c64> amps = random_state(n, rng);
            std::vector<double> p_ref(amps.size()), p_vec(amps.size());
            ref.born_probabilities(amps.data(), amps.size(), p_ref.data());
            vec->born_probabilities(amps.data(), amps.size(), p_vec.data());
            CHECK(std::memcmp(p_ref.data(), p_vec.data(), p_ref.size() * sizeof(double)) == 0);
        }
    }

    SUBCASE("norm agrees to accumulation-order tolerance") {
        for (int n = 1; n <= 9; ++n) {
            const std::vector<simd::c64> amps = random_state(n, rng);
            const double a = ref.norm_squared(amps.data(), amps.size());
            const double b = vec->norm_squared(amps.data(), amps.size());
            CHECK(std::abs(a - b) < 1e-12 * std::max(1.0, std::abs(a)));
        }
    }
}

TEST_CASE("kernel selection is reported") {
    const simd::KernelSet& active = simd::active_kernels();
    CHECK((std::string(active.name) == "scalar" || std::string(active.name) == "avx2"));
}
