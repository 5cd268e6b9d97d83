#pragma once

#include <cstdint>
#include <random>

namespace rydmis {

// Deterministic random source with a stable cross-platform stream.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard, so identical seeds reproduce identical graphs and measurement
// histories on any conforming implementation. We deliberately avoid
// std::uniform_*_distribution (implementation-defined streams) and convert
// raw 64-bit draws ourselves.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform in [0, 1): top 53 bits of one draw.
    double next_double() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double next_double(double lo, double hi) { return lo + (hi - lo) * next_double(); }

private:
    std::mt19937_64 eng_;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Documented stream-splitting rule: substream k of a master seed.
// Used by the sweep harness and the Monte Carlo experiment runner so that
// (master seed, index) fully determines each independent stream.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master ^ splitmix64(index + 1));
}

}  // namespace rydmis
