#include "tracemine/events.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <utility>

#include "tracemine/errors.hpp"

namespace tracemine {

namespace {

double parse_timestamp(const std::string& text, std::size_t line) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw ParseError("invalid timestamp '" + text + "'", line);
    }
    return value;
}

} // namespace

std::vector<EventRecord> parse_events(std::istream& in) {
    std::vector<EventRecord> events;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1 && line == "t,tag,location") continue;
        if (line.empty()) {
            throw ParseError("empty row", line_no);
        }
        std::size_t c1 = line.find(',');
        std::size_t c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
        if (c2 == std::string::npos || line.find(',', c2 + 1) != std::string::npos) {
            throw ParseError("expected 't,tag,location'", line_no);
        }
        EventRecord rec;
        rec.t = parse_timestamp(line.substr(0, c1), line_no);
        rec.tag = line.substr(c1 + 1, c2 - c1 - 1);
        rec.location = line.substr(c2 + 1);
        if (rec.tag.empty() || rec.location.empty()) {
            throw ParseError("empty tag or location", line_no);
        }
        events.push_back(std::move(rec));
    }
    std::stable_sort(events.begin(), events.end(),
                     [](const EventRecord& a, const EventRecord& b) {
                         if (a.tag != b.tag) return a.tag < b.tag;
                         return a.t < b.t;
                     });
    return events;
}

std::vector<EventRecord> parse_events(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "' for reading");
    return parse_events(in);
}

namespace {

// Synthetic label for an overlap zone between x and y: the numeric formula
// min*100+max when both names are numbers, "min×max" (string order)
// otherwise.
std::string overlap_label(const std::string& x, const std::string& y) {
    auto as_number = [](const std::string& s) -> std::optional<std::uint64_t> {
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
        return v;
    };
    auto nx = as_number(x);
    auto ny = as_number(y);
    if (nx && ny) {
        std::uint64_t lo = std::min(*nx, *ny);
        std::uint64_t hi = std::max(*nx, *ny);
        // guard lo*100+hi against 64-bit overflow; fall back to the string form
        if (lo <= (UINT64_MAX - hi) / 100) {
            return std::to_string(lo * 100 + hi);
        }
    }
    const std::string& lo = std::min(x, y);
    const std::string& hi = std::max(x, y);
    return lo + "\xc3\x97" + hi; // U+00D7 multiplication sign
}

// Largest gap between consecutive readings in [first, last).
double max_internal_gap(std::span<const CollapsedReading> readings,
                        std::size_t first, std::size_t last) {
    double worst = 0.0;
    for (std::size_t i = first + 1; i < last; ++i) {
        worst = std::max(worst, readings[i].t_first - readings[i - 1].t_last);
    }
    return worst;
}

} // namespace

std::vector<CollapsedReading> collapse_overlap(
    std::span<const CollapsedReading> readings, double delta,
    std::size_t* merges, std::size_t* gap_warnings) {
    // Tokenize into blocks of consecutive equal labels; an alternation run
    // is then simply a sequence of blocks with labels x,y,x,y,...
    struct Block {
        std::size_t first; // index range [first, last) into `readings`
        std::size_t last;
    };
    std::vector<Block> blocks;
    for (std::size_t i = 0; i < readings.size();) {
        std::size_t j = i + 1;
        while (j < readings.size() && readings[j].label == readings[i].label) ++j;
        blocks.push_back({i, j});
        i = j;
    }

    std::vector<CollapsedReading> out;
    out.reserve(readings.size());
    for (std::size_t b = 0; b < blocks.size();) {
        // Length of the alternating block run starting here.
        const std::string& x = readings[blocks[b].first].label;
        std::size_t run = 1;
        if (b + 1 < blocks.size()) {
            const std::string& y = readings[blocks[b + 1].first].label;
            run = 2;
            while (b + run < blocks.size() &&
                   readings[blocks[b + run].first].label == (run % 2 == 0 ? x : y)) {
                ++run;
            }
        }
        // The pattern needs at least two complete x..y block pairs; munch
        // the largest even number of blocks available.
        std::size_t consumed = run - run % 2;
        if (consumed >= 4) {
            const std::string& y = readings[blocks[b + 1].first].label;
            std::size_t first = blocks[b].first;
            std::size_t last = blocks[b + consumed - 1].last;
            CollapsedReading merged;
            merged.label = overlap_label(x, y);
            merged.t_first = readings[first].t_first;
            merged.t_last = readings[last - 1].t_last;
            out.push_back(std::move(merged));
            if (merges) ++*merges;
            if (gap_warnings && max_internal_gap(readings, first, last) > delta) {
                ++*gap_warnings;
            }
            b += consumed;
        } else {
            // No run from this block; pass its readings through. The next
            // run, if any, can still start at the following block.
            for (std::size_t i = blocks[b].first; i < blocks[b].last; ++i) {
                out.push_back(readings[i]);
            }
            ++b;
        }
    }
    return out;
}

std::vector<CollapsedReading> dedup_same_zone(
    std::span<const CollapsedReading> readings, double delta,
    std::size_t* merges, std::size_t* gap_warnings) {
    std::vector<CollapsedReading> out;
    out.reserve(readings.size());
    for (std::size_t i = 0; i < readings.size();) {
        std::size_t j = i + 1;
        while (j < readings.size() && readings[j].label == readings[i].label) ++j;
        CollapsedReading visit = readings[i];
        visit.t_last = readings[j - 1].t_last;
        out.push_back(std::move(visit));
        if (j - i > 1) {
            if (merges) ++*merges;
            if (gap_warnings && max_internal_gap(readings, i, j) > delta) {
                ++*gap_warnings;
            }
        }
        i = j;
    }
    return out;
}

LabeledDag build_event_dag(std::span<const EventRecord> events, double delta,
                           bool allow_zero_gap, IngestStats* stats) {
    if (!(delta > 0.0)) {
        throw DomainError("delta must be positive");
    }
    IngestStats local;
    local.raw_events = events.size();

    // Clean each tag's readings independently, then lay all visits out as
    // one vertex list (tags in sorted order, time order within a tag).
    LabelDict dict;
    std::vector<Label> labels;
    std::vector<Edge> edges;
    std::vector<CollapsedReading> cleaned; // reused per tag

    for (std::size_t lo = 0; lo < events.size();) {
        std::size_t hi = lo + 1;
        while (hi < events.size() && events[hi].tag == events[lo].tag) ++hi;

        std::vector<CollapsedReading> raw;
        raw.reserve(hi - lo);
        for (std::size_t i = lo; i < hi; ++i) {
            raw.push_back({events[i].location, events[i].t, events[i].t});
        }
        cleaned = collapse_overlap(raw, delta, &local.overlap_merges,
                                   &local.delta_gap_warnings);
        cleaned = dedup_same_zone(cleaned, delta, &local.dedup_merges,
                                  &local.delta_gap_warnings);

        VertexId base = static_cast<VertexId>(labels.size());
        for (const CollapsedReading& visit : cleaned) {
            labels.push_back(dict.intern(visit.label));
        }
        for (std::size_t a = 0; a < cleaned.size(); ++a) {
            for (std::size_t b = a + 1; b < cleaned.size(); ++b) {
                double gap = cleaned[b].t_first - cleaned[a].t_last;
                if (gap > delta) break; // t_first only grows from here on
                if (gap < 0.0 || (gap == 0.0 && !allow_zero_gap)) continue;
                if (cleaned[a].label == cleaned[b].label) continue;
                edges.emplace_back(base + static_cast<VertexId>(a),
                                   base + static_cast<VertexId>(b));
            }
        }
        lo = hi;
    }

    LabeledDag dag = build_dag(std::move(labels), edges, std::move(dict));
    local.vertex_count = dag.vertex_count();
    local.edge_count = dag.edge_count();
    if (stats) *stats = local;
    return dag;
}

} // namespace tracemine
