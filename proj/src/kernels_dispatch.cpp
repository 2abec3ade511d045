#include <cstdlib>
#include <cstring>

#include "qsvm/errors.hpp"
#include "qsvm/simd.hpp"

namespace qsvm::simd {

const KernelSet* avx2_kernels_impl();   // defined in kernels_avx2.cpp

const KernelSet* avx2_kernels() {
#if defined(__x86_64__) || defined(_M_X64)
    if (const KernelSet* set = avx2_kernels_impl(); set != nullptr) {
        if (__builtin_cpu_supports("avx2")) return set;
    }
#endif
    return nullptr;
}

namespace {

const KernelSet& pick_kernels() {
    if (const char* forced = std::getenv("QSVM_KERNELS"); forced != nullptr) {
        if (std::strcmp(forced, "scalar") == 0) return scalar_kernels();
        if (std::strcmp(forced, "avx2") == 0) {
            if (const KernelSet* set = avx2_kernels()) return *set;
            throw config_error("QSVM_KERNELS=avx2 requested but AVX2 is unavailable");
        }
        throw config_error(std::string("unknown QSVM_KERNELS value: ") + forced);
    }
    if (const KernelSet* set = avx2_kernels()) return *set;
    return scalar_kernels();
}

}  // namespace

const KernelSet& active_kernels() {
    static const KernelSet& chosen = pick_kernels();
    return chosen;
}

}  // namespace qsvm::simd
