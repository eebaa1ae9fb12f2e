#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lyapdual/cohomology.hpp"
#include "lyapdual/flow_graph.hpp"
#include "lyapdual/node_set.hpp"

namespace lyapdual {

// Nodes whose SCC contains at least one internal edge (self-loops count).
NodeSet chain_recurrent_set(const FlowGraph& g);

// Nodes lying on a closed walk whose w_xi-sum is zero. Per SCC, after
// clearing denominators: both positive- and negative-sum cycles present means
// the whole SCC qualifies; otherwise a feasible potential is found by
// shortest-path relaxation and the qualifying nodes are those on closed walks
// of the tight subgraph.
NodeSet r_xi_set(const FlowGraph& g, const CohomologyClass& xi);

// Oracle: nodes on some closed walk of length <= max_len with zero w_xi-sum,
// by exhaustive layered search over (node, accumulated sum) states.
NodeSet r_xi_bruteforce(const FlowGraph& g, const CohomologyClass& xi, uint32_t max_len);

// A zero-sum closed walk through v with length <= max_len, as consecutive
// edge indices, if one exists within the bound.
std::optional<std::vector<uint32_t>> find_zero_walk(const FlowGraph& g,
                                                    const CohomologyClass& xi, uint32_t v,
                                                    uint32_t max_len);

}  // namespace lyapdual
