#include "tracemine/dag.hpp"

#include <algorithm>
#include <string>

namespace tracemine {

Label LabelDict::intern(std::string_view name) {
    auto it = ids_.find(std::string(name));
    if (it != ids_.end()) return it->second;
    Label id = static_cast<Label>(names_.size());
    names_.emplace_back(name);
    ids_.emplace(names_.back(), id);
    return id;
}

std::optional<Label> LabelDict::find(std::string_view name) const {
    auto it = ids_.find(std::string(name));
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

const std::string& LabelDict::name(Label id) const {
    if (id >= names_.size()) {
        throw RangeError("label id " + std::to_string(id) + " out of range (dictionary size " +
                         std::to_string(names_.size()) + ")");
    }
    return names_[id];
}

LabelDict LabelDict::decimal(std::size_t count) {
    LabelDict dict;
    for (std::size_t i = 0; i < count; ++i) {
        dict.intern(std::to_string(i));
    }
    return dict;
}

namespace {

// Walks the unresolved remnant of Kahn's algorithm to extract one cycle.
// Every remnant vertex still has an undelivered in-edge, i.e. an in-remnant
// predecessor, so following predecessors must revisit a vertex.
std::vector<VertexId> find_witness_cycle(std::size_t n,
                                         const std::vector<std::vector<VertexId>>& adj,
                                         const std::vector<std::size_t>& in_degree) {
    std::vector<bool> in_remnant(n);
    VertexId start = 0;
    for (std::size_t v = 0; v < n; ++v) {
        in_remnant[v] = in_degree[v] > 0;
        if (in_remnant[v]) start = static_cast<VertexId>(v);
    }
    std::vector<VertexId> pred(n, UINT32_MAX);
    for (std::size_t v = 0; v < n; ++v) {
        if (!in_remnant[v]) continue;
        for (VertexId w : adj[v]) {
            if (in_remnant[w] && pred[w] == UINT32_MAX) pred[w] = static_cast<VertexId>(v);
        }
    }
    std::vector<std::uint32_t> visited_at(n, UINT32_MAX);
    std::vector<VertexId> path;
    VertexId cur = start;
    while (visited_at[cur] == UINT32_MAX) {
        visited_at[cur] = static_cast<std::uint32_t>(path.size());
        path.push_back(cur);
        cur = pred[cur];
    }
    // The backward walk revisited `cur`; the segment from its first visit,
    // reversed, is a cycle in edge direction.
    std::vector<VertexId> cycle(path.begin() + visited_at[cur], path.end());
    std::reverse(cycle.begin(), cycle.end());
    return cycle;
}

} // namespace

LabeledDag build_dag(std::vector<Label> vertex_labels, std::span<const Edge> edges,
                     LabelDict dict) {
    const std::size_t n = vertex_labels.size();

    if (dict.empty() && n > 0) {
        Label max_label = *std::max_element(vertex_labels.begin(), vertex_labels.end());
        dict = LabelDict::decimal(static_cast<std::size_t>(max_label) + 1);
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (vertex_labels[v] >= dict.size()) {
            throw RangeError("vertex " + std::to_string(v) + " has label " +
                             std::to_string(vertex_labels[v]) + " outside the dictionary");
        }
    }

    std::vector<std::vector<VertexId>> adj(n);
    for (const auto& [src, dst] : edges) {
        if (src >= n || dst >= n) {
            throw RangeError("edge (" + std::to_string(src) + "," + std::to_string(dst) +
                             ") references a vertex outside [0," + std::to_string(n) + ")");
        }
        if (src == dst) {
            throw CycleError("self-loop on vertex " + std::to_string(src), {src});
        }
        adj[src].push_back(dst);
    }
    for (auto& list : adj) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }

    // Kahn's algorithm; doubles as the cycle check.
    std::vector<std::size_t> in_degree(n, 0);
    for (const auto& list : adj) {
        for (VertexId w : list) ++in_degree[w];
    }
    std::vector<VertexId> order;
    order.reserve(n);
    std::vector<VertexId> stack;
    for (std::size_t v = 0; v < n; ++v) {
        if (in_degree[v] == 0) stack.push_back(static_cast<VertexId>(v));
    }
    std::vector<std::size_t> remaining = in_degree;
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        order.push_back(v);
        for (VertexId w : adj[v]) {
            if (--remaining[w] == 0) stack.push_back(w);
        }
    }
    if (order.size() != n) {
        auto cycle = find_witness_cycle(n, adj, remaining);
        std::string msg = "graph contains a cycle:";
        for (VertexId v : cycle) msg += " " + std::to_string(v);
        throw CycleError(msg, std::move(cycle));
    }

    LabeledDag dag;
    dag.labels_ = std::move(vertex_labels);
    dag.dict_ = std::move(dict);
    dag.topo_order_ = std::move(order);
    dag.offsets_.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) {
        dag.offsets_[v + 1] = dag.offsets_[v] + adj[v].size();
    }
    dag.targets_.reserve(dag.offsets_[n]);
    for (const auto& list : adj) {
        dag.targets_.insert(dag.targets_.end(), list.begin(), list.end());
    }
    return dag;
}

bool structurally_equal(const LabeledDag& a, const LabeledDag& b) {
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) {
        return false;
    }
    for (VertexId v = 0; v < a.vertex_count(); ++v) {
        if (a.label_name(v) != b.label_name(v)) return false;
        auto ea = a.out_edges(v);
        auto eb = b.out_edges(v);
        if (!std::equal(ea.begin(), ea.end(), eb.begin(), eb.end())) return false;
    }
    return true;
}

} // namespace tracemine
