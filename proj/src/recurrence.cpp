#include "lyapdual/recurrence.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "lyapdual/difference_constraints.hpp"
#include "lyapdual/errors.hpp"
#include "lyapdual/graph_algos.hpp"

namespace lyapdual {

namespace {

// Nodes (local indices) lying on some cycle of the arc list: members of a
// strongly connected component with at least one internal arc.
std::vector<char> nodes_on_cycles(uint32_t n, const std::vector<std::pair<uint32_t, uint32_t>>& arcs) {
    // iterative Tarjan over local adjacency
    std::vector<std::vector<uint32_t>> adj(n);
    for (const auto& [t, h] : arcs) adj[t].push_back(h);
    constexpr uint32_t NONE = UINT32_MAX;
    std::vector<uint32_t> index(n, NONE), low(n, 0), comp(n, NONE);
    std::vector<uint32_t> stack;
    std::vector<char> on_stack(n, 0);
    uint32_t next_index = 0, next_comp = 0;
    struct Frame {
        uint32_t v, ei;
    };
    std::vector<Frame> call;
    for (uint32_t root = 0; root < n; ++root) {
        if (index[root] != NONE) continue;
        call.push_back({root, 0});
        while (!call.empty()) {
            auto& fr = call.back();
            uint32_t v = fr.v;
            if (fr.ei == 0) {
                index[v] = low[v] = next_index++;
                stack.push_back(v);
                on_stack[v] = 1;
            }
            bool descended = false;
            while (fr.ei < adj[v].size()) {
                uint32_t w = adj[v][fr.ei++];
                if (index[w] == NONE) {
                    call.push_back({w, 0});
                    descended = true;
                    break;
                }
                if (on_stack[w]) low[v] = std::min(low[v], index[w]);
            }
            if (descended) continue;
            if (low[v] == index[v]) {
                for (;;) {
                    uint32_t w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp[w] = next_comp;
                    if (w == v) break;
                }
                ++next_comp;
            }
            call.pop_back();
            if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
        }
    }
    std::vector<char> comp_has_edge(next_comp, 0);
    for (const auto& [t, h] : arcs)
        if (comp[t] == comp[h]) comp_has_edge[comp[t]] = 1;
    std::vector<char> result(n, 0);
    for (uint32_t v = 0; v < n; ++v) result[v] = comp_has_edge[comp[v]];
    return result;
}

}  // namespace

NodeSet chain_recurrent_set(const FlowGraph& g) {
    SccPartition parts = scc(g);
    std::vector<char> has_edge(parts.components.size(), 0);
    for (uint32_t e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        if (parts.comp_of[ed.tail] == parts.comp_of[ed.head])
            has_edge[parts.comp_of[ed.tail]] = 1;
    }
    NodeSet r = g.empty_set();
    for (uint32_t v = 0; v < g.node_count(); ++v)
        if (has_edge[parts.comp_of[v]]) r.insert(v);
    return r;
}

NodeSet r_xi_set(const FlowGraph& g, const CohomologyClass& xi) {
    Cochain w = pairing(g, xi);
    SccPartition parts = scc(g);
    NodeSet result = g.empty_set();

    for (const auto& members : parts.components) {
        const uint32_t comp_id = parts.comp_of[members[0]];
        // local index per member
        std::map<uint32_t, uint32_t> local;
        for (uint32_t i = 0; i < members.size(); ++i) local[members[i]] = i;
        std::vector<uint32_t> internal_edges;
        for (uint32_t v : members)
            for (uint32_t e : g.out_edges(v))
                if (parts.comp_of[g.edge(e).head] == comp_id) internal_edges.push_back(e);
        std::sort(internal_edges.begin(), internal_edges.end());
        if (internal_edges.empty()) continue;

        std::vector<Rat> vals;
        vals.reserve(internal_edges.size());
        for (uint32_t e : internal_edges) vals.push_back(w[e]);
        Int m = denominator_lcm(vals);
        const uint32_t k = static_cast<uint32_t>(members.size());

        auto make_arcs = [&](int sign) {
            std::vector<Arc> arcs;
            arcs.reserve(internal_edges.size());
            for (uint32_t e : internal_edges) {
                Rat scaled = w[e] * Rat(m);
                scaled.canonicalize();
                Arc a;
                a.tail = local[g.edge(e).tail];
                a.head = local[g.edge(e).head];
                a.cost = sign > 0 ? Int(scaled.get_num()) : Int(-scaled.get_num());
                arcs.push_back(std::move(a));
            }
            return arcs;
        };

        // all cycle sums <= 0 iff the negated system is feasible; tight arcs
        // (zero reduced cost) carry every zero-sum closed walk
        auto add_tight_cycle_nodes = [&](const std::vector<Arc>& arcs,
                                         const std::vector<Int>& pot) {
            std::vector<std::pair<uint32_t, uint32_t>> tight;
            for (const Arc& a : arcs)
                if (pot[a.tail] + a.cost == pot[a.head]) tight.emplace_back(a.tail, a.head);
            std::vector<char> on = nodes_on_cycles(k, tight);
            for (uint32_t i = 0; i < k; ++i)
                if (on[i]) result.insert(members[i]);
        };

        std::vector<Arc> neg = make_arcs(-1);  // feasible <=> no positive cycle
        RelaxResult a = relax_difference_system(k, neg);
        if (a.feasible) {
            add_tight_cycle_nodes(neg, a.potential);
            continue;
        }
        std::vector<Arc> pos = make_arcs(+1);  // feasible <=> no negative cycle
        RelaxResult b = relax_difference_system(k, pos);
        if (b.feasible) {
            add_tight_cycle_nodes(pos, b.potential);
            continue;
        }
        // both a positive and a negative cycle: every node of the SCC lies on
        // a zero-sum closed walk (closed walks through one node concatenate)
        for (uint32_t v : members) result.insert(v);
    }
    return result;
}

namespace {

struct WalkState {
    uint32_t node;
    Rat sum;
    bool operator<(const WalkState& o) const {
        if (node != o.node) return node < o.node;
        return sum < o.sum;
    }
};

}  // namespace

std::optional<std::vector<uint32_t>> find_zero_walk(const FlowGraph& g,
                                                    const CohomologyClass& xi, uint32_t v,
                                                    uint32_t max_len) {
    Cochain w = pairing(g, xi);
    // layered exhaustive search; states deduplicated by (node, running sum)
    using Layer = std::map<WalkState, std::pair<WalkState, uint32_t>>;  // state -> (prev, edge)
    std::vector<Layer> layers(1);
    layers[0].emplace(WalkState{v, Rat(0)}, std::make_pair(WalkState{v, Rat(0)}, UINT32_MAX));
    constexpr size_t STATE_CAP = 4000000;
    size_t total_states = 1;
    for (uint32_t len = 1; len <= max_len; ++len) {
        Layer next;
        for (const auto& [st, ignored] : layers.back()) {
            (void)ignored;
            for (uint32_t e : g.out_edges(st.node)) {
                WalkState ns{g.edge(e).head, st.sum + w[e]};
                ns.sum.canonicalize();
                next.emplace(ns, std::make_pair(st, e));
            }
        }
        total_states += next.size();
        if (total_states > STATE_CAP)
            throw Error("zero-walk search state explosion; reduce max_len");
        layers.push_back(std::move(next));
        auto hit = layers.back().find(WalkState{v, Rat(0)});
        if (hit != layers.back().end()) {
            std::vector<uint32_t> walk;
            WalkState cur = hit->first;
            for (uint32_t l = len; l > 0; --l) {
                auto it = layers[l].find(cur);
                walk.push_back(it->second.second);
                cur = it->second.first;
            }
            std::reverse(walk.begin(), walk.end());
            return walk;
        }
    }
    return std::nullopt;
}

NodeSet r_xi_bruteforce(const FlowGraph& g, const CohomologyClass& xi, uint32_t max_len) {
    NodeSet result = g.empty_set();
    for (uint32_t v = 0; v < g.node_count(); ++v)
        if (find_zero_walk(g, xi, v, max_len).has_value()) result.insert(v);
    return result;
}

}  // namespace lyapdual
