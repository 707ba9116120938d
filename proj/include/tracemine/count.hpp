#ifndef TRACEMINE_COUNT_HPP
#define TRACEMINE_COUNT_HPP

#include <cstdint>
#include <cstdlib>
#include <iosfwd>
#include <new>
#include <span>
#include <vector>

#include "tracemine/dag.hpp"

namespace tracemine {
namespace detail {

// Backs multi-megabyte count tables with huge-page-friendly storage: the
// counting sweep gathers 48-byte rows at random offsets, and with 4 KiB
// pages a table in the tens of megabytes thrashes the TLB badly enough
// that the per-edge cost is no longer flat in |E|.
void* table_allocate(std::size_t bytes);
void table_deallocate(void* p);

template <typename T>
struct TableAllocator {
    using value_type = T;

    TableAllocator() = default;
    template <typename U>
    TableAllocator(const TableAllocator<U>&) noexcept {}

    T* allocate(std::size_t n) {
        return static_cast<T*>(table_allocate(n * sizeof(T)));
    }
    void deallocate(T* p, std::size_t) noexcept { table_deallocate(p); }

    friend bool operator==(const TableAllocator&, const TableAllocator&) {
        return true;
    }
};

} // namespace detail

// Per-vertex path counts: c(v, i) is the number of directed paths of
// length at most i that start at v, so c(v, 0) = 0 and
//
//   c(v, i) = 1 + sum over edges (v, v') of c(v', i-1).
//
// Row-major |V| x (m+1) storage; the full table is kept (not just column
// m) because the sampler reads c(v', i-1) at every recursion level.
class PathCountTable {
public:
    PathCountTable() = default;
    PathCountTable(std::size_t vertex_count, std::uint32_t m)
        : m_(m), counts_(vertex_count * (m + 1), 0) {}

    std::uint32_t horizon() const { return m_; }
    std::size_t vertex_count() const { return counts_.size() / (m_ + 1); }

    std::uint64_t at(VertexId v, std::uint32_t i) const {
        return counts_[static_cast<std::size_t>(v) * (m_ + 1) + i];
    }
    std::uint64_t& at(VertexId v, std::uint32_t i) {
        return counts_[static_cast<std::size_t>(v) * (m_ + 1) + i];
    }

    // The row c(v, 0..m) as a contiguous span.
    std::span<const std::uint64_t> row(VertexId v) const {
        return {counts_.data() + static_cast<std::size_t>(v) * (m_ + 1),
                static_cast<std::size_t>(m_) + 1};
    }

private:
    std::uint32_t m_ = 0;
    std::vector<std::uint64_t, detail::TableAllocator<std::uint64_t>> counts_;
};

// Fills the table by one sweep in reverse topological order (every edge
// target is finished before its source), i.e. the memoized recursion of
// the definition evaluated iteratively -- no stack-depth hazard on deep
// graphs. O(|E| m) time, O(|V| m) space. Throws OverflowError if any
// entry would exceed 64 bits.
PathCountTable count_traces(const LabeledDag& dag, std::uint32_t m);

// |S_m| = sum over v of c(v, m). Throws OverflowError if the sum does.
std::uint64_t total_traces(const PathCountTable& table);

// Debug dump, one line per vertex: `vertex<TAB>c[0]<TAB>...<TAB>c[m]`.
void dump_counts(const PathCountTable& table, std::ostream& out);

} // namespace tracemine

#endif // TRACEMINE_COUNT_HPP
