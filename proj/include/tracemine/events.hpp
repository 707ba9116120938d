#ifndef TRACEMINE_EVENTS_HPP
#define TRACEMINE_EVENTS_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "tracemine/dag.hpp"

namespace tracemine {

// Conversion of a timestamped reading stream into a labeled DAG: two
// same-tag observations at different locations are linked by an edge when
// they are at most `delta` minutes apart. Before edges are drawn, two
// cleaning passes remove sensor noise: alternating two-zone bursts are
// collapsed into a synthetic overlap zone, and consecutive re-reads of one
// zone are merged into a single visit.

// One raw reading: tag `tag` seen at `location` at time `t` (minutes).
struct EventRecord {
    double t = 0.0;
    std::string tag;
    std::string location;
};

// A cleaned visit: `label` observed over the closed interval
// [t_first, t_last] (equal for an unmerged single reading).
struct CollapsedReading {
    std::string label;
    double t_first = 0.0;
    double t_last = 0.0;
};

// Counters reported by the ingestion pipeline.
struct IngestStats {
    std::size_t raw_events = 0;
    std::size_t overlap_merges = 0;   // alternation runs collapsed
    std::size_t dedup_merges = 0;     // same-zone re-read groups merged
    // Merges whose internal reading gaps exceed delta. The merge is kept
    // (the spanned visit is still one visit), but the resulting vertex
    // bridges a pause longer than the edge rule itself would allow, which
    // is worth surfacing.
    std::size_t delta_gap_warnings = 0;
    std::size_t vertex_count = 0;
    std::size_t edge_count = 0;
};

// Parses CSV rows `t,tag,location` (header line `t,tag,location` optional)
// and returns the records sorted by (tag, t), ties keeping input order.
// Throws ParseError (with line number) on a malformed row or a non-finite
// timestamp.
std::vector<EventRecord> parse_events(std::istream& in);
std::vector<EventRecord> parse_events(const std::string& path);

// Collapses every maximal alternating two-zone run of the form
// (x+ y+)(x+ y+)+ -- at least two complete x..y blocks -- into one reading
// whose label is min*100+max for numeric zone names (min/max by value) and
// "min×max" otherwise (min/max by string order), spanning the run's first
// and last timestamp. Shorter alternations and everything else pass
// through unchanged. Input must be the time-sorted readings of one tag.
//
// When `delta` is finite, a collapsed run whose consecutive readings are
// ever more than delta apart increments *gap_warnings.
std::vector<CollapsedReading> collapse_overlap(
    std::span<const CollapsedReading> readings,
    double delta = std::numeric_limits<double>::infinity(),
    std::size_t* merges = nullptr, std::size_t* gap_warnings = nullptr);

// Merges consecutive equal-label readings into one visit bracketing their
// timestamps. Input must be the time-sorted readings of one tag.
std::vector<CollapsedReading> dedup_same_zone(
    std::span<const CollapsedReading> readings,
    double delta = std::numeric_limits<double>::infinity(),
    std::size_t* merges = nullptr, std::size_t* gap_warnings = nullptr);

// Full pipeline: group by tag, collapse_overlap, dedup_same_zone, then one
// vertex per visit and an edge u -> w iff both visits belong to the same
// tag, their labels differ, u precedes w, and w.t_first - u.t_last lies in
// (0, delta] -- or [0, delta] with `allow_zero_gap`, which still keeps the
// graph acyclic because edges only ever point forward in reading order.
// `events` must already be sorted by (tag, t) as parse_events returns it.
LabeledDag build_event_dag(std::span<const EventRecord> events, double delta,
                           bool allow_zero_gap = false,
                           IngestStats* stats = nullptr);

} // namespace tracemine

#endif // TRACEMINE_EVENTS_HPP
