#pragma once

#include <cmath>
#include <cstdint>

namespace loopkit {

// Project-wide deterministic generator. SplitMix64: the state advances by a
// fixed odd constant and each output is a finalizer of the new state, so the
// stream is a pure function of (seed, call index) on every platform.
// Reference: Steele, Lea & Flood, "Fast splittable pseudorandom number
// generators" (the java.util.SplittableRandom mixer).
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1): top 53 bits scaled down.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n). Plain modulo; the bias is ~n/2^64 and the
    // draw count per call is fixed at one, which downstream code relies on.
    std::uint64_t next_below(std::uint64_t n) {
        return next_u64() % n;
    }

    // Standard normal via Box-Muller, cosine branch only. Consumes exactly
    // two raw draws per call.
    double next_normal() {
        // (k+1)/2^53 lands in (0, 1] so the log never sees zero.
        double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
        double u2 = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

private:
    std::uint64_t state_;
};

} // namespace loopkit
