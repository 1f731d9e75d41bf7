#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace rispls {

/// Seeded 64-bit generator used everywhere randomness is needed.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard, so identical seeds reproduce identical draws on every platform.
/// Bounded integers use modulo reduction and uniform reals use the top 53
/// bits; both mappings are spelled out here instead of relying on
/// implementation-defined <random> distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform index in [0, n). n must be > 0.
    std::size_t uniform_index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

    /// Uniform real in [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform real in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// In-place Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = uniform_index(i);
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace rispls
