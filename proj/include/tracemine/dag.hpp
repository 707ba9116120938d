#ifndef TRACEMINE_DAG_HPP
#define TRACEMINE_DAG_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tracemine/errors.hpp"

namespace tracemine {

// Dense vertex index, 0 <= v < |V|.
using VertexId = std::uint32_t;

// Interned label id, 0 <= label < dictionary size.
using Label = std::uint32_t;

using Edge = std::pair<VertexId, VertexId>;

// A label sequence along a path.
using Trace = std::vector<Label>;

// Bijection between label ids and the original label strings.
class LabelDict {
public:
    LabelDict() = default;

    // Returns the id of `name`, interning it if new.
    Label intern(std::string_view name);

    std::optional<Label> find(std::string_view name) const;

    const std::string& name(Label id) const;

    std::size_t size() const { return names_.size(); }
    bool empty() const { return names_.empty(); }

    // Dictionary mapping each id in [0, count) to its decimal string.
    static LabelDict decimal(std::size_t count);

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, Label> ids_;
};

// Immutable labeled DAG in CSR form. Adjacency lists are sorted and
// duplicate-free, so iteration order is deterministic. Safe for
// unrestricted concurrent reads once built.
class LabeledDag {
public:
    LabeledDag() = default;

    std::size_t vertex_count() const { return labels_.size(); }
    std::size_t edge_count() const { return targets_.size(); }

    Label label(VertexId v) const { return labels_[v]; }

    std::span<const VertexId> out_edges(VertexId v) const {
        return {targets_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
    }

    std::size_t out_degree(VertexId v) const {
        return offsets_[v + 1] - offsets_[v];
    }

    // Permutation of the vertices in which every edge points forward.
    const std::vector<VertexId>& topo_order() const { return topo_order_; }

    const LabelDict& dict() const { return dict_; }
    const std::string& label_name(VertexId v) const { return dict_.name(labels_[v]); }

    friend LabeledDag build_dag(std::vector<Label> vertex_labels,
                                std::span<const Edge> edges, LabelDict dict);

private:
    std::vector<Label> labels_;
    std::vector<std::size_t> offsets_; // size |V|+1
    std::vector<VertexId> targets_;
    std::vector<VertexId> topo_order_;
    LabelDict dict_;
};

// Validates and builds a DAG. Duplicate edges are collapsed. If `dict` is
// empty it is synthesized as the decimal dictionary covering the labels.
// Throws RangeError on an out-of-range endpoint or label, CycleError (with
// one witness cycle) if the edge set is not acyclic.
LabeledDag build_dag(std::vector<Label> vertex_labels, std::span<const Edge> edges,
                     LabelDict dict = {});

// True if the two DAGs have the same vertex count, the same label string on
// every vertex, and the same edge set. Label ids themselves may differ.
bool structurally_equal(const LabeledDag& a, const LabeledDag& b);

} // namespace tracemine

#endif // TRACEMINE_DAG_HPP
