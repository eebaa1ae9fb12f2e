#pragma once

#include <atomic>
#include <cstdint>
#include <vector>

#include "lyapdual/rational.hpp"

namespace lyapdual {

// One constraint d[head] <= d[tail] + cost.
struct Arc {
    uint32_t tail = 0;
    uint32_t head = 0;
    Int cost;
};

struct RelaxResult {
    bool feasible = false;
    // Feasible: integer potentials (all <= 0) satisfying every arc.
    std::vector<Int> potential;
    // Infeasible: arc indices of one strictly negative cycle, in walk order.
    std::vector<uint32_t> negative_cycle;
};

// Round-based shortest-path relaxation from an implicit all-zero super
// source. Arcs are processed in index order with strict improvement only, so
// the result is deterministic. A cycle in the predecessor graph is extracted
// as the negative-cycle witness (checked after each round; guaranteed to
// appear within n+1 rounds when the system is infeasible). The optional flag
// cancels long runs between rounds.
RelaxResult relax_difference_system(uint32_t n, const std::vector<Arc>& arcs,
                                    const std::atomic<bool>* cancel = nullptr);

}  // namespace lyapdual
