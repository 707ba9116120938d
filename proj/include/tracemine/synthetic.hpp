#ifndef TRACEMINE_SYNTHETIC_HPP
#define TRACEMINE_SYNTHETIC_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tracemine/dag.hpp"
#include "tracemine/events.hpp"

namespace tracemine {

// Seeded generators for test corpora and the bench subcommand. Everything
// here is a pure function of its spec, so corpora are reproducible.

// Random DAG with forward edges only (acyclic by construction): vertex i
// may point to any of the next `window` vertices, each included with
// probability `edge_prob`. Labels are drawn uniformly from the alphabet.
struct RandomDagSpec {
    std::size_t vertex_count = 0;
    std::size_t alphabet = 4;      // label values in [0, alphabet)
    std::size_t window = 8;        // candidate targets per vertex
    double edge_prob = 0.3;
    std::uint64_t seed = 1;
};
LabeledDag random_dag(const RandomDagSpec& spec);

// DAG of `copies` disjoint chains all carrying the label sequence
// `pattern`, plus `noise` isolated vertices with pairwise-distinct labels
// that also appear nowhere in the pattern. Every chain contributes the
// same traces, so each pattern prefix has multiplicity `copies` while
// every noise trace has multiplicity 1 -- a corpus with exactly known
// frequencies for mining tests.
LabeledDag planted_dag(std::size_t copies, std::span<const Label> pattern,
                       std::size_t noise);

// Synthetic movement data for the ingestion pipeline: `tags` tags each
// perform `steps` readings over `zones` locations. Consecutive readings
// are `gap` minutes apart. A fraction of steps repeats the previous zone
// (exercising same-zone dedup) and a fraction emits an x,y,x,y burst
// (exercising overlap collapsing).
struct EventStreamSpec {
    std::size_t tags = 4;
    std::size_t steps = 50;        // readings per tag before noise
    std::size_t zones = 10;        // location names "1".."zones"
    double gap = 5.0;              // minutes between consecutive readings
    double repeat_prob = 0.1;      // chance to re-read the same zone
    double overlap_prob = 0.05;    // chance to start an alternation burst
    std::uint64_t seed = 1;
};
std::vector<EventRecord> generate_events(const EventStreamSpec& spec);

} // namespace tracemine

#endif // TRACEMINE_SYNTHETIC_HPP
