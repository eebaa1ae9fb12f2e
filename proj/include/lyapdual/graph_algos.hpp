#pragma once

#include <cstdint>
#include <vector>

#include "lyapdual/flow_graph.hpp"
#include "lyapdual/node_set.hpp"

namespace lyapdual {

// A set z together with a block certifying Inv(block) = z.
struct IsolatedInvariantSet {
    NodeSet z;
    NodeSet block;
};

// Strongly connected components in topological order of the condensation
// (sources first). comp_of[v] is the component index; components[c] lists
// node indices ascending.
struct SccPartition {
    std::vector<uint32_t> comp_of;
    std::vector<std::vector<uint32_t>> components;
};

SccPartition scc(const FlowGraph& g);

// Largest invariant subset of b: every member keeps an in-neighbor and an
// out-neighbor inside the set (iterated pruning to the fixpoint).
NodeSet inv(const FlowGraph& g, const NodeSet& b);

// Variant that ignores masked-out edges (edge_alive[e] == false).
NodeSet inv_masked(const FlowGraph& g, const NodeSet& b, const std::vector<char>& edge_alive);

bool is_invariant(const FlowGraph& g, const NodeSet& z);

// True iff inv(g, b) = z (and hence z is invariant).
bool is_isolating_block(const FlowGraph& g, const NodeSet& b, const NodeSet& z);

// Grows b = z plus all nodes within `radius` in-or-out edge steps and checks
// isolation. Throws std::invalid_argument if z is not invariant, NotIsolated
// (with the extra nodes) if Inv(b) strictly exceeds z.
IsolatedInvariantSet find_isolating_block(const FlowGraph& g, const NodeSet& z,
                                          uint32_t radius = 1);

// Connected components of the subgraph induced on z, edge directions
// forgotten. Ordered by least contained node index; nodes ascending within.
std::vector<std::vector<uint32_t>> z_components(const FlowGraph& g, const NodeSet& z);

}  // namespace lyapdual
