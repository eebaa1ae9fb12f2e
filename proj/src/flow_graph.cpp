#include "lyapdual/flow_graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace lyapdual {

uint32_t FlowGraph::add_node(NodeId id, std::optional<std::vector<int64_t>> coords) {
    if (id < 0) throw std::invalid_argument("node ids must be nonnegative");
    if (index_by_id_.count(id)) throw std::invalid_argument("duplicate node id");
    uint32_t idx = static_cast<uint32_t>(ids_.size());
    ids_.push_back(id);
    coords_.push_back(std::move(coords));
    index_by_id_[id] = idx;
    out_.emplace_back();
    in_.emplace_back();
    return idx;
}

uint32_t FlowGraph::add_edge(NodeId tail_id, NodeId head_id, std::vector<Rat> weight) {
    if (weight.size() != rank_) throw std::invalid_argument("weight vector rank mismatch");
    for (Rat& w : weight) w.canonicalize();
    uint32_t t = index_of(tail_id), h = index_of(head_id);
    auto key = std::make_tuple(t, h, weight);
    auto it = edge_keys_.find(key);
    if (it != edge_keys_.end()) {
        // identical parallel edge: merged
        for (uint32_t e = 0; e < edges_.size(); ++e)
            if (edges_[e].tail == t && edges_[e].head == h && edges_[e].weight == weight)
                return e;
    }
    edge_keys_.insert(std::move(key));
    uint32_t e = static_cast<uint32_t>(edges_.size());
    edges_.push_back(Edge{t, h, std::move(weight)});
    out_[t].push_back(e);
    in_[h].push_back(e);
    return e;
}

void FlowGraph::canonicalize_edges() {
    std::sort(edges_.begin(), edges_.end(), [&](const Edge& a, const Edge& b) {
        if (ids_[a.tail] != ids_[b.tail]) return ids_[a.tail] < ids_[b.tail];
        if (ids_[a.head] != ids_[b.head]) return ids_[a.head] < ids_[b.head];
        return a.weight < b.weight;
    });
    rebuild_adjacency();
}

void FlowGraph::rebuild_adjacency() {
    for (auto& v : out_) v.clear();
    for (auto& v : in_) v.clear();
    for (uint32_t e = 0; e < edges_.size(); ++e) {
        out_[edges_[e].tail].push_back(e);
        in_[edges_[e].head].push_back(e);
    }
}

uint32_t FlowGraph::index_of(NodeId id) const {
    auto it = index_by_id_.find(id);
    if (it == index_by_id_.end())
        throw std::invalid_argument("unknown node id " + std::to_string(id));
    return it->second;
}

NodeSet FlowGraph::set_of_ids(const std::vector<NodeId>& ids) const {
    NodeSet s(node_count());
    for (NodeId id : ids) s.insert(index_of(id));
    return s;
}

std::vector<NodeId> FlowGraph::ids_of_set(const NodeSet& s) const {
    std::vector<NodeId> out;
    out.reserve(s.count());
    for (uint32_t i : s.to_indices()) out.push_back(ids_[i]);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace lyapdual
