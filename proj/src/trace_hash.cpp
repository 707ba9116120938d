#include "tracemine/trace_hash.hpp"

#include <array>

namespace tracemine {

std::string hash_hex(TraceHash h) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::array<char, 16> buf;
    for (int i = 15; i >= 0; --i) {
        buf[static_cast<std::size_t>(i)] = kDigits[h & 0xf];
        h >>= 4;
    }
    return std::string(buf.data(), buf.size());
}

} // namespace tracemine
