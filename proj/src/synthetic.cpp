#include "tracemine/synthetic.hpp"

#include <algorithm>
#include <string>

#include "tracemine/errors.hpp"
#include "tracemine/rng.hpp"

namespace tracemine {

LabeledDag random_dag(const RandomDagSpec& spec) {
    if (spec.alphabet == 0) throw DomainError("alphabet must be non-empty");
    Rng rng(spec.seed);
    std::vector<Label> labels(spec.vertex_count);
    for (Label& l : labels) {
        l = static_cast<Label>(rng.below(spec.alphabet));
    }
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < spec.vertex_count; ++i) {
        std::size_t limit = std::min(spec.vertex_count, i + 1 + spec.window);
        for (std::size_t j = i + 1; j < limit; ++j) {
            if (rng.uniform() < spec.edge_prob) {
                edges.emplace_back(static_cast<VertexId>(i),
                                   static_cast<VertexId>(j));
            }
        }
    }
    return build_dag(std::move(labels), edges, LabelDict::decimal(spec.alphabet));
}

LabeledDag planted_dag(std::size_t copies, std::span<const Label> pattern,
                       std::size_t noise) {
    if (pattern.empty()) throw DomainError("pattern must be non-empty");
    Label max_pattern = *std::max_element(pattern.begin(), pattern.end());

    std::vector<Label> labels;
    labels.reserve(copies * pattern.size() + noise);
    std::vector<Edge> edges;
    edges.reserve(copies * (pattern.size() - 1));
    for (std::size_t c = 0; c < copies; ++c) {
        VertexId base = static_cast<VertexId>(labels.size());
        for (std::size_t i = 0; i < pattern.size(); ++i) {
            labels.push_back(pattern[i]);
            if (i > 0) {
                edges.emplace_back(base + static_cast<VertexId>(i) - 1,
                                   base + static_cast<VertexId>(i));
            }
        }
    }
    for (std::size_t i = 0; i < noise; ++i) {
        labels.push_back(max_pattern + 1 + static_cast<Label>(i));
    }
    std::size_t alphabet = static_cast<std::size_t>(max_pattern) + 1 + noise;
    return build_dag(std::move(labels), edges, LabelDict::decimal(alphabet));
}

std::vector<EventRecord> generate_events(const EventStreamSpec& spec) {
    if (spec.zones < 2) throw DomainError("need at least two zones");
    Rng rng(spec.seed);
    std::vector<EventRecord> events;
    events.reserve(spec.tags * spec.steps);

    auto zone_name = [](std::size_t z) { return std::to_string(z + 1); };

    for (std::size_t tag = 0; tag < spec.tags; ++tag) {
        std::string tag_name = "tag" + std::to_string(tag + 1);
        double t = 0.0;
        std::size_t zone = rng.below(spec.zones);
        for (std::size_t step = 0; step < spec.steps; ++step) {
            double roll = rng.uniform();
            if (roll < spec.overlap_prob) {
                // Alternation burst between the current zone and a second
                // one: the overlap-collapse rule's trigger pattern.
                std::size_t other =
                    (zone + 1 + rng.below(spec.zones - 1)) % spec.zones;
                for (int rep = 0; rep < 2; ++rep) {
                    events.push_back({t, tag_name, zone_name(zone)});
                    t += spec.gap;
                    events.push_back({t, tag_name, zone_name(other)});
                    t += spec.gap;
                }
                zone = other;
                continue;
            }
            if (roll >= spec.overlap_prob + spec.repeat_prob) {
                zone = (zone + 1 + rng.below(spec.zones - 1)) % spec.zones;
            }
            events.push_back({t, tag_name, zone_name(zone)});
            t += spec.gap;
        }
    }
    std::stable_sort(events.begin(), events.end(),
                     [](const EventRecord& a, const EventRecord& b) {
                         if (a.tag != b.tag) return a.tag < b.tag;
                         return a.t < b.t;
                     });
    return events;
}

} // namespace tracemine
