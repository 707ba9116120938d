#ifndef TRACEMINE_TRACE_HASH_HPP
#define TRACEMINE_TRACE_HASH_HPP

#include <cstdint>
#include <span>
#include <string>

#include "tracemine/dag.hpp"
#include "tracemine/rng.hpp"

namespace tracemine {

// 64-bit incremental polynomial hash of a trace. Equal traces always hash
// equal under a fixed base; appending a label is O(1).
using TraceHash = std::uint64_t;

// Polynomial hash modulo the Mersenne prime 2^61-1. The base is drawn from
// a seeded generator so runs are reproducible; it is reported in run
// metadata. Labels are offset by one so that no label acts as a zero digit.
class TraceHasher {
public:
    static constexpr std::uint64_t kModulus = (1ULL << 61) - 1;
    static constexpr std::uint64_t kDefaultSeed = 0x7472616365730001ULL;

    explicit TraceHasher(std::uint64_t seed = kDefaultSeed) {
        std::uint64_t s = seed;
        base_ = 2 + splitmix64(s) % (kModulus - 3);
    }

    std::uint64_t base() const { return base_; }

    static TraceHash empty() { return 0; }

    TraceHash extend(TraceHash h, Label l) const {
        return add_mod(mul_mod(h, base_), static_cast<std::uint64_t>(l) + 1);
    }

    TraceHash hash(std::span<const Label> trace) const {
        TraceHash h = empty();
        for (Label l : trace) h = extend(h, l);
        return h;
    }

private:
    static std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
        unsigned __int128 prod = static_cast<unsigned __int128>(a) * b;
        std::uint64_t lo = static_cast<std::uint64_t>(prod & kModulus);
        std::uint64_t hi = static_cast<std::uint64_t>(prod >> 61);
        std::uint64_t r = lo + hi;          // < 2^62
        r = (r & kModulus) + (r >> 61);     // fold once more
        if (r >= kModulus) r -= kModulus;
        return r;
    }

    static std::uint64_t add_mod(std::uint64_t a, std::uint64_t b) {
        std::uint64_t r = a + b;
        if (r >= kModulus) r -= kModulus;
        return r;
    }

    std::uint64_t base_;
};

// Lowercase hex form used for hashed trace output.
std::string hash_hex(TraceHash h);

} // namespace tracemine

#endif // TRACEMINE_TRACE_HASH_HPP
