#pragma once

#include <cstdint>
#include <random>

namespace parastab {

/// Seeded uniform sampler with a platform-independent mapping from the
/// 64-bit engine output to [lo, hi).
class UniformSampler {
public:
    explicit UniformSampler(std::uint64_t seed) : engine_(seed) {}

    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
    std::uint64_t index(std::uint64_t n) { return engine_() % n; }

private:
    std::mt19937_64 engine_;
};

}  // namespace parastab
