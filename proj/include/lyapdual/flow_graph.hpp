#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "lyapdual/node_set.hpp"
#include "lyapdual/rational.hpp"

namespace lyapdual {

using NodeId = int64_t;

// One directed transition with a rational weight vector of length basis_rank.
// tail/head are node *indices* (positions in insertion order), not ids.
struct Edge {
    uint32_t tail = 0;
    uint32_t head = 0;
    std::vector<Rat> weight;
};

// Weighted multidigraph. Node and edge order is insertion order and every
// query iterates in that order, so all algorithms downstream are
// deterministic. Parallel edges with identical weight vectors are merged.
class FlowGraph {
public:
    explicit FlowGraph(uint32_t basis_rank) : rank_(basis_rank) {}

    uint32_t basis_rank() const { return rank_; }
    uint32_t node_count() const { return static_cast<uint32_t>(ids_.size()); }
    uint32_t edge_count() const { return static_cast<uint32_t>(edges_.size()); }

    // Adds a node with an explicit id (unique, nonnegative). Returns its index.
    uint32_t add_node(NodeId id, std::optional<std::vector<int64_t>> coords = std::nullopt);
    // Adds a node whose id equals the next free index.
    uint32_t add_node() { return add_node(static_cast<NodeId>(ids_.size())); }

    // Adds tail -> head (by id) with |weight| = basis_rank. Duplicate
    // (tail, head, weight) triples collapse to one edge. Returns edge index.
    uint32_t add_edge(NodeId tail_id, NodeId head_id, std::vector<Rat> weight);

    // Re-sorts edges by (tail id, head id, weight) lexicographically; the file
    // writer emits edges in storage order, so graphs built cell-by-cell call
    // this once to land in the canonical file order.
    void canonicalize_edges();

    NodeId id_of(uint32_t index) const { return ids_[index]; }
    uint32_t index_of(NodeId id) const;
    bool has_id(NodeId id) const { return index_by_id_.count(id) != 0; }

    const std::optional<std::vector<int64_t>>& coords_of(uint32_t index) const {
        return coords_[index];
    }

    const Edge& edge(uint32_t e) const { return edges_[e]; }
    const std::vector<Edge>& edges() const { return edges_; }

    // Edge indices incident to a node, in edge insertion order.
    const std::vector<uint32_t>& out_edges(uint32_t v) const { return out_[v]; }
    const std::vector<uint32_t>& in_edges(uint32_t v) const { return in_[v]; }

    NodeSet empty_set() const { return NodeSet(node_count()); }
    NodeSet full_set() const { return NodeSet::full(node_count()); }

    NodeSet set_of_ids(const std::vector<NodeId>& ids) const;
    std::vector<NodeId> ids_of_set(const NodeSet& s) const;

private:
    uint32_t rank_;
    std::vector<NodeId> ids_;
    std::vector<std::optional<std::vector<int64_t>>> coords_;
    std::map<NodeId, uint32_t> index_by_id_;
    std::vector<Edge> edges_;
    std::vector<std::vector<uint32_t>> out_, in_;
    std::set<std::tuple<uint32_t, uint32_t, std::vector<Rat>>> edge_keys_;

    void rebuild_adjacency();
};

}  // namespace lyapdual
