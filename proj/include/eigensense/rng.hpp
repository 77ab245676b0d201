#pragma once

#include <cstdint>

namespace eigensense {

/// Counter-based 64-bit generator (splitmix64 update and finalizer).
///
/// Substreams for independent tasks are derived from a master seed and a
/// stream index, so the draws of trial i never depend on how many other
/// trials ran, on which thread, or in what order.
class Rng {
public:
    explicit Rng(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next_u64() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1), 53-bit resolution.
    double next_unit() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform in (0, 1]; safe as a log() argument.
    double next_unit_positive() noexcept {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    /// Seed of the independent substream identified by `index` under `master`.
    static std::uint64_t derive(std::uint64_t master, std::uint64_t index) noexcept {
        return mix(master ^ mix(index + 0x9e3779b97f4a7c15ULL));
    }

private:
    static std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

}  // namespace eigensense
