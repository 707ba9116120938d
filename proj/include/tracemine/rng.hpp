#ifndef TRACEMINE_RNG_HPP
#define TRACEMINE_RNG_HPP

#include <array>
#include <cstdint>

namespace tracemine {

// SplitMix64 finalizer; used to expand seeds and derive stream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic seed for the sub-stream `stream` of a master seed. Streams
// derived from distinct (seed, stream) pairs are statistically independent,
// so work split across threads reproduces regardless of scheduling.
inline std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    s = stream ^ 0x5851f42d4c957f2dULL;
    std::uint64_t b = splitmix64(s);
    s = a ^ b;
    return splitmix64(s);
}

// xoshiro256** by Blackman & Vigna. Small state, fast, and good enough for
// the Monte Carlo assertions in the test suite.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t s = seed;
        for (auto& word : state_) {
            word = splitmix64(s);
        }
    }

    static Rng for_stream(std::uint64_t seed, std::uint64_t stream) {
        return Rng(derive_stream_seed(seed, stream));
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform double in [0, 1), 53 bits of precision.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n) {
        // rejection-free modulo bias is negligible for the ranges used here,
        // but keep it exact anyway
        std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
};

} // namespace tracemine

#endif // TRACEMINE_RNG_HPP
