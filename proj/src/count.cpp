#include "tracemine/count.hpp"

#include <cstdlib>
#include <new>
#include <ostream>
#include <string>

#if defined(__linux__)
#include <sys/mman.h>
#endif

#include "tracemine/errors.hpp"

namespace tracemine {
namespace detail {

namespace {
constexpr std::size_t kHugePage = 2u << 20;
constexpr std::size_t kHugeThreshold = 8u << 20;
} // namespace

void* table_allocate(std::size_t bytes) {
    if (bytes == 0) bytes = 1;
    void* p = nullptr;
    if (bytes >= kHugeThreshold) {
        // Align to the huge-page size and ask for huge pages before the
        // buffer is first touched, so it faults in with 2 MiB mappings.
        if (posix_memalign(&p, kHugePage, bytes) != 0) throw std::bad_alloc();
#if defined(__linux__) && defined(MADV_HUGEPAGE)
        madvise(p, bytes, MADV_HUGEPAGE);
#endif
        return p;
    }
    p = std::malloc(bytes);
    if (p == nullptr) throw std::bad_alloc();
    return p;
}

void table_deallocate(void* p) { std::free(p); }

} // namespace detail

PathCountTable count_traces(const LabeledDag& dag, std::uint32_t m) {
    PathCountTable table(dag.vertex_count(), m);
    const auto& order = dag.topo_order();

    // Reverse topological order: all successors of v are already filled
    // when v is processed, for every column at once.
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        VertexId v = *it;
        for (std::uint32_t i = 1; i <= m; ++i) {
            std::uint64_t c = 1; // the single-vertex path
            for (VertexId child : dag.out_edges(v)) {
                if (__builtin_add_overflow(c, table.at(child, i - 1), &c)) {
                    throw OverflowError(
                        "path count at vertex " + std::to_string(v) +
                        ", horizon " + std::to_string(i) + " exceeds 64 bits");
                }
            }
            table.at(v, i) = c;
        }
    }
    return table;
}

std::uint64_t total_traces(const PathCountTable& table) {
    std::uint64_t total = 0;
    const std::uint32_t m = table.horizon();
    for (VertexId v = 0; v < table.vertex_count(); ++v) {
        if (__builtin_add_overflow(total, table.at(v, m), &total)) {
            throw OverflowError("total trace count exceeds 64 bits");
        }
    }
    return total;
}

void dump_counts(const PathCountTable& table, std::ostream& out) {
    for (VertexId v = 0; v < table.vertex_count(); ++v) {
        out << v;
        for (std::uint64_t c : table.row(v)) {
            out << '\t' << c;
        }
        out << '\n';
    }
}

} // namespace tracemine
