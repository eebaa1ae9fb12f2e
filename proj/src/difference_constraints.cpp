#include "lyapdual/difference_constraints.hpp"

#include <algorithm>
#include <cstdlib>

#include "lyapdual/errors.hpp"

namespace lyapdual {

namespace {

// Walks the predecessor graph looking for a cycle; returns arc indices in
// walk order, or empty. Under strict relaxation a predecessor cycle is a
// strictly negative cycle.
std::vector<uint32_t> pred_cycle(uint32_t n, const std::vector<Arc>& arcs,
                                 const std::vector<uint32_t>& pred_arc) {
    constexpr uint32_t NONE = UINT32_MAX;
    std::vector<uint32_t> color(n, 0);  // 0 unseen, 1 on current walk, 2 done
    for (uint32_t start = 0; start < n; ++start) {
        if (color[start] != 0) continue;
        uint32_t v = start;
        std::vector<uint32_t> walk;
        while (v != NONE && color[v] == 0) {
            color[v] = 1;
            walk.push_back(v);
            v = pred_arc[v] == NONE ? NONE : arcs[pred_arc[v]].tail;
        }
        if (v != NONE && color[v] == 1) {
            // v closes a cycle: collect arcs from v around to itself
            std::vector<uint32_t> cyc;
            uint32_t u = v;
            do {
                cyc.push_back(pred_arc[u]);
                u = arcs[pred_arc[u]].tail;
            } while (u != v);
            std::reverse(cyc.begin(), cyc.end());  // forward walk order
            for (uint32_t w : walk) color[w] = 2;
            return cyc;
        }
        for (uint32_t w : walk) color[w] = 2;
    }
    return {};
}

template <typename T>
RelaxResult relax_typed(uint32_t n, const std::vector<Arc>& arcs,
                        const std::vector<T>& cost, const std::atomic<bool>* cancel) {
    constexpr uint32_t NONE = UINT32_MAX;
    std::vector<T> d(n, T(0));
    std::vector<uint32_t> pred_arc(n, NONE);
    for (uint32_t round = 0; round <= n + 1; ++round) {
        if (cancel && cancel->load(std::memory_order_relaxed))
            throw OperationCanceled("relaxation canceled");
        bool relaxed = false;
        for (uint32_t a = 0; a < arcs.size(); ++a) {
            T nd = d[arcs[a].tail] + cost[a];
            if (nd < d[arcs[a].head]) {
                d[arcs[a].head] = nd;
                pred_arc[arcs[a].head] = a;
                relaxed = true;
            }
        }
        if (!relaxed) {
            RelaxResult r;
            r.feasible = true;
            r.potential.reserve(n);
            for (const T& x : d) r.potential.emplace_back(x);
            return r;
        }
        std::vector<uint32_t> cyc = pred_cycle(n, arcs, pred_arc);
        if (!cyc.empty()) {
            RelaxResult r;
            r.feasible = false;
            r.negative_cycle = std::move(cyc);
            return r;
        }
    }
    // unreachable: an infeasible system produces a predecessor cycle within
    // n+1 relaxation rounds
    std::abort();
}

}  // namespace

RelaxResult relax_difference_system(uint32_t n, const std::vector<Arc>& arcs,
                                    const std::atomic<bool>* cancel) {
    // int64 fast path when every intermediate distance provably fits
    Int maxabs = 0;
    for (const Arc& a : arcs) {
        Int c = abs(a.cost);
        if (c > maxabs) maxabs = c;
    }
    Int bound = maxabs * (Int(n) + 2);
    if (bound.fits_slong_p() && bound.get_si() < (int64_t(1) << 62)) {
        std::vector<int64_t> cost;
        cost.reserve(arcs.size());
        for (const Arc& a : arcs) cost.push_back(a.cost.get_si());
        return relax_typed<int64_t>(n, arcs, cost, cancel);
    }
    std::vector<Int> cost;
    cost.reserve(arcs.size());
    for (const Arc& a : arcs) cost.push_back(a.cost);
    return relax_typed<Int>(n, arcs, cost, cancel);
}

}  // namespace lyapdual
