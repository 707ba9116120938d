#ifndef TRACEMINE_ENUMERATE_HPP
#define TRACEMINE_ENUMERATE_HPP

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tracemine/dag.hpp"
#include "tracemine/errors.hpp"
#include "tracemine/trace_hash.hpp"

namespace tracemine {

// Exact enumeration of the trace multiset S_m: one emission per directed
// path of length at most m. Traces are streamed to a consumer, so the walk
// needs only O(m) memory beyond the DAG itself; materialization is opt-in
// via exact_frequencies() below, which carries an output budget.
//
// Emission order is fixed for reproducibility: roots in vertex order,
// children in sorted adjacency order, prefix before its extensions
// (preorder depth-first).

// Multiset of traces keyed by full label sequence. std::map keeps keys in
// lexicographic order, which gives deterministic report output.
struct TraceMultiset {
    std::map<Trace, std::uint64_t> counts;
    std::uint64_t total = 0;
};

namespace detail {

// Shared DFS driver. Emit is called once per path with the label stack and
// the incrementally maintained hash of the current trace.
template <typename Emit>
void walk_traces(const LabeledDag& dag, std::uint32_t m,
                 const TraceHasher& hasher, Emit&& emit) {
    if (m == 0) return;

    struct Frame {
        VertexId vertex;
        std::uint32_t next_child; // index into out_edges(vertex)
    };
    std::vector<Frame> stack;
    std::vector<Label> path;
    std::vector<TraceHash> hashes; // hashes[i] = hash of path[0..i]
    stack.reserve(m);
    path.reserve(m);
    hashes.reserve(m);

    for (VertexId root = 0; root < dag.vertex_count(); ++root) {
        stack.push_back({root, 0});
        path.push_back(dag.label(root));
        hashes.push_back(hasher.extend(TraceHasher::empty(), path.back()));
        emit(std::span<const Label>(path), hashes.back());

        while (!stack.empty()) {
            Frame& top = stack.back();
            auto children = dag.out_edges(top.vertex);
            if (stack.size() == m || top.next_child == children.size()) {
                stack.pop_back();
                path.pop_back();
                hashes.pop_back();
                continue;
            }
            VertexId child = children[top.next_child++];
            stack.push_back({child, 0});
            path.push_back(dag.label(child));
            hashes.push_back(hasher.extend(hashes.back(), path.back()));
            emit(std::span<const Label>(path), hashes.back());
        }
    }
}

} // namespace detail

// Invokes sink(std::span<const Label>) exactly once per path of length <= m.
template <typename Sink>
void all_traces(const LabeledDag& dag, std::uint32_t m, Sink&& sink) {
    TraceHasher hasher; // hashes computed but unused; extension is O(1)
    detail::walk_traces(dag, m, hasher,
                        [&](std::span<const Label> t, TraceHash) { sink(t); });
}

// Variant that also hands the sink the incremental Karp-Rabin hash of each
// emitted trace: sink(std::span<const Label>, TraceHash).
template <typename Sink>
void all_traces_hashed(const LabeledDag& dag, std::uint32_t m,
                       const TraceHasher& hasher, Sink&& sink) {
    detail::walk_traces(dag, m, hasher, std::forward<Sink>(sink));
}

// Materializes the full multiset. Throws BudgetExceeded once more than
// `budget` traces have been emitted; the default cap keeps an accidental
// enumeration of a huge DAG from eating the machine.
TraceMultiset exact_frequencies(const LabeledDag& dag, std::uint32_t m,
                                std::uint64_t budget = 100'000'000);

// Human-readable trace form: label names joined by '-', e.g. "1-2-3".
std::string format_trace(const LabeledDag& dag, std::span<const Label> trace);
std::string format_trace(const LabeledDag& dag, const Trace& trace);

} // namespace tracemine

#endif // TRACEMINE_ENUMERATE_HPP
