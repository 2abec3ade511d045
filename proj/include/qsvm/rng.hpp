#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace qsvm {

// Every stochastic code path in the toolkit draws from this wrapper around
// std::mt19937_64. The engine is fully specified by the C++ standard and the
// uint64 -> double mapping below is fixed, so identical seeds reproduce
// identical shot-level outputs on any platform. std::*_distribution adapters
// are implementation-defined and must not be used.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller; the second deviate is cached.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 6.283185307179586476925286766559 * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

  private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Order-sensitive combination of a base seed with further values. Used to
// derive independent per-entry and per-shot streams from one global seed.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t value) {
    return splitmix64(base ^ (splitmix64(value) + 0x9e3779b97f4a7c15ULL + (base << 6) + (base >> 2)));
}

inline std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace qsvm
