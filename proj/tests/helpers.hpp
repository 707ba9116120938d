#ifndef TRACEMINE_TESTS_HELPERS_HPP
#define TRACEMINE_TESTS_HELPERS_HPP

#include <map>
#include <string>
#include <vector>

#include "tracemine/dag.hpp"
#include "tracemine/enumerate.hpp"

namespace tracemine::testing {

// Five zones labeled 1,2,3,6,7 with movement edges 1->2, 1->3, 2->3 and
// 6->7. At m=5 the trace multiset has exactly ten members: the five
// singletons plus 1-2, 1-3, 2-3, 6-7 and 1-2-3.
inline LabeledDag movement_dag() {
    std::vector<Label> labels = {1, 2, 3, 6, 7};
    std::vector<Edge> edges = {{0, 1}, {0, 2}, {1, 2}, {3, 4}};
    return build_dag(std::move(labels), edges);
}

// The matching raw reading stream: one trolley visiting the five zones at
// t = 10, 20, 30, 60, 70.
inline std::string movement_csv() {
    return "t,tag,location\n"
           "10,trolley1,1\n"
           "20,trolley1,2\n"
           "30,trolley1,3\n"
           "60,trolley1,6\n"
           "70,trolley1,7\n";
}

// Distinct traces rendered as strings, with multiplicities.
inline std::map<std::string, std::uint64_t> trace_strings(const LabeledDag& dag,
                                                          std::uint32_t m) {
    std::map<std::string, std::uint64_t> out;
    for (const auto& [trace, count] : exact_frequencies(dag, m).counts) {
        out[format_trace(dag, trace)] = count;
    }
    return out;
}

} // namespace tracemine::testing

#endif // TRACEMINE_TESTS_HELPERS_HPP
