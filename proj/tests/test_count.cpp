#include <doctest.h>

#include <cstdint>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

#include "tracemine/count.hpp"
#include "tracemine/enumerate.hpp"
#include "tracemine/errors.hpp"
#include "tracemine/synthetic.hpp"

#include "helpers.hpp"

using namespace tracemine;
using tracemine::testing::movement_dag;

namespace {

// Independent oracle: count paths of length <= i from v by explicitly
// walking every path. Exponential, fine on the small graphs used here.
std::uint64_t paths_from(const LabeledDag& dag, VertexId v, std::uint32_t i) {
    if (i == 0) return 0;
    std::uint64_t total = 1; // the single-vertex path
    for (VertexId w : dag.out_edges(v)) total += paths_from(dag, w, i - 1);
    return total;
}

} // namespace

TEST_CASE("movement example per-vertex counts at m=5") {
    LabeledDag dag = movement_dag();
    PathCountTable table = count_traces(dag, 5);

    // vertices 0..4 carry labels 1,2,3,6,7
    CHECK(table.at(0, 5) == 4); // 1, 1-2, 1-3, 1-2-3
    CHECK(table.at(1, 5) == 2); // 2, 2-3
    CHECK(table.at(2, 5) == 1); // 3
    CHECK(table.at(3, 5) == 2); // 6, 6-7
    CHECK(table.at(4, 5) == 1); // 7
    CHECK(total_traces(table) == 10);
}

TEST_CASE("column zero is all zeros and horizon one counts vertices") {
    LabeledDag dag = movement_dag();
    PathCountTable table = count_traces(dag, 3);
    for (VertexId v = 0; v < dag.vertex_count(); ++v) {
        CHECK(table.at(v, 0) == 0);
        CHECK(table.at(v, 1) == 1);
    }
    CHECK(table.horizon() == 3);
    CHECK(table.vertex_count() == 5);
}

TEST_CASE("recurrence holds pointwise on random DAGs") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        RandomDagSpec spec;
        spec.vertex_count = 2 + seed % 20;
        spec.edge_prob = 0.4;
        spec.seed = seed;
        LabeledDag dag = random_dag(spec);
        const std::uint32_t m = 6;
        PathCountTable table = count_traces(dag, m);
        for (VertexId v = 0; v < dag.vertex_count(); ++v) {
            for (std::uint32_t i = 1; i <= m; ++i) {
                std::uint64_t sum = 1;
                for (VertexId w : dag.out_edges(v)) sum += table.at(w, i - 1);
                CHECK(table.at(v, i) == sum);
            }
        }
    }
}

TEST_CASE("counts are non-decreasing in the horizon") {
    RandomDagSpec spec;
    spec.vertex_count = 25;
    spec.edge_prob = 0.5;
    spec.seed = 11;
    LabeledDag dag = random_dag(spec);
    PathCountTable table = count_traces(dag, 8);
    for (VertexId v = 0; v < dag.vertex_count(); ++v)
        for (std::uint32_t i = 1; i <= 8; ++i)
            CHECK(table.at(v, i) >= table.at(v, i - 1));
}

TEST_CASE("counts match explicit path enumeration") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        RandomDagSpec spec;
        spec.vertex_count = 2 + seed % 10;
        spec.window = 4;
        spec.edge_prob = 0.5;
        spec.seed = seed * 3 + 1;
        LabeledDag dag = random_dag(spec);
        const std::uint32_t m = 5;
        PathCountTable table = count_traces(dag, m);
        std::uint64_t sum = 0;
        for (VertexId v = 0; v < dag.vertex_count(); ++v) {
            for (std::uint32_t i = 0; i <= m; ++i)
                CHECK(table.at(v, i) == paths_from(dag, v, i));
            sum += table.at(v, m);
        }
        CHECK(total_traces(table) == sum);
    }
}

TEST_CASE("table total equals the enumerated multiset size") {
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        RandomDagSpec spec;
        spec.vertex_count = 3 + seed;
        spec.edge_prob = 0.35;
        spec.seed = seed + 100;
        LabeledDag dag = random_dag(spec);
        for (std::uint32_t m : {1u, 2u, 4u}) {
            PathCountTable table = count_traces(dag, m);
            CHECK(total_traces(table) == exact_frequencies(dag, m).total);
        }
    }
}

TEST_CASE("per-entry overflow is detected") {
    // Chain with skip edges: i -> i+1 and i -> i+2 makes c(0, i) grow at
    // least as fast as the Fibonacci numbers, which clear 2^64 well before
    // the horizon below.
    const std::size_t n = 120;
    std::vector<Label> labels(n, 0);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        edges.push_back({static_cast<VertexId>(i), static_cast<VertexId>(i + 1)});
        if (i + 2 < n)
            edges.push_back({static_cast<VertexId>(i), static_cast<VertexId>(i + 2)});
    }
    LabeledDag dag = build_dag(std::move(labels), edges);
    CHECK_THROWS_AS(count_traces(dag, 119), OverflowError);
    CHECK_NOTHROW(count_traces(dag, 20)); // small horizons stay in range
}

TEST_CASE("total overflow is detected even when every entry fits") {
    PathCountTable table(2, 1);
    table.at(0, 1) = 1ULL << 63;
    table.at(1, 1) = 1ULL << 63;
    CHECK_THROWS_AS(total_traces(table), OverflowError);
}

TEST_CASE("dump emits one tab-separated row per vertex") {
    LabeledDag dag = movement_dag();
    PathCountTable table = count_traces(dag, 2);
    std::ostringstream out;
    dump_counts(table, out);
    CHECK(out.str() ==
          "0\t0\t1\t3\n"
          "1\t0\t1\t2\n"
          "2\t0\t1\t1\n"
          "3\t0\t1\t2\n"
          "4\t0\t1\t1\n");
}
