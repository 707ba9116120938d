#include "tracemine/enumerate.hpp"

namespace tracemine {

TraceMultiset exact_frequencies(const LabeledDag& dag, std::uint32_t m,
                                std::uint64_t budget) {
    TraceMultiset out;
    all_traces(dag, m, [&](std::span<const Label> t) {
        if (out.total == budget) {
            throw BudgetExceeded("trace enumeration exceeded budget of " +
                                 std::to_string(budget) + " emissions");
        }
        ++out.counts[Trace(t.begin(), t.end())];
        ++out.total;
    });
    return out;
}

std::string format_trace(const LabeledDag& dag, std::span<const Label> trace) {
    std::string s;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        if (i > 0) s += '-';
        s += dag.dict().name(trace[i]);
    }
    return s;
}

std::string format_trace(const LabeledDag& dag, const Trace& trace) {
    return format_trace(dag, std::span<const Label>(trace));
}

} // namespace tracemine
