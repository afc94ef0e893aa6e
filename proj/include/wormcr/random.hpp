#pragma once

#include <cstdint>
#include <random>

namespace wormcr {

/// Seeded uniform source.  Uses the top 53 bits of mt19937_64 directly so the
/// stream is identical across standard libraries.
class UniformSource {
public:
    explicit UniformSource(std::uint64_t seed) : engine_(seed) {}

    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace wormcr
