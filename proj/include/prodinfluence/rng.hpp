#pragma once

#include <cstdint>

namespace prodinfluence {

/// SplitMix64 (Steele, Lea, Flood 2014). Chosen over the std engines because
/// its output is fixed by these constants on every platform, and independent
/// streams can be derived cheaply, so seeded sampling stays reproducible even
/// when samples are evaluated in parallel.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, bound) by rejection; bound must be nonzero.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (~std::uint64_t{0} / bound);
        std::uint64_t value = next();
        while (value >= limit) {
            value = next();
        }
        return value % bound;
    }

    /// Derives the seed of an independent stream from (seed, index).
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
        SplitMix64 g(seed ^ (0x632be59bd9b4e019ULL + index * 0x9e3779b97f4a7c15ULL));
        return g.next();
    }

private:
    std::uint64_t state_;
};

} // namespace prodinfluence
