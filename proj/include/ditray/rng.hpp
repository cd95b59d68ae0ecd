#pragma once

#include <cstdint>
#include <random>

namespace ditray {

// Deterministic random stream. mt19937_64 has a standard-mandated output
// sequence; the double conversion below avoids std::uniform_real_distribution,
// whose exact output is implementation-defined.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

private:
    std::mt19937_64 engine_;
};

// Seed for the index-th substream of a run (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace ditray
