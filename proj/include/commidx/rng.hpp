#pragma once

#include <cstdint>
#include <random>

namespace commidx {

// Deterministic seeded generator. mt19937_64 output is pinned by the
// standard; we deliberately avoid std::uniform_int_distribution, whose
// mapping is implementation-defined, so reports are byte-identical on
// every platform. Modulo bias is irrelevant for test sampling.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t raw() { return eng_(); }

    // Uniform-ish draw from [lo, hi], inclusive.
    long pick(long lo, long hi) {
        return lo + static_cast<long>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::mt19937_64 eng_;
};

} // namespace commidx
