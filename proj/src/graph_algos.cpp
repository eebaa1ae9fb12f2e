#include "lyapdual/graph_algos.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "lyapdual/errors.hpp"

namespace lyapdual {

SccPartition scc(const FlowGraph& g) {
    const uint32_t n = g.node_count();
    constexpr uint32_t NONE = UINT32_MAX;
    std::vector<uint32_t> index(n, NONE), low(n, 0), comp(n, NONE);
    std::vector<uint32_t> stack;           // Tarjan stack
    std::vector<char> on_stack(n, 0);
    std::vector<std::vector<uint32_t>> comps;
    uint32_t next_index = 0;

    // iterative Tarjan: frame = (node, position in its out-edge list)
    struct Frame {
        uint32_t v;
        uint32_t ei;
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
            const auto& outs = g.out_edges(v);
            while (fr.ei < outs.size()) {
                uint32_t w = g.edge(outs[fr.ei]).head;
                ++fr.ei;
                if (index[w] == NONE) {
                    call.push_back({w, 0});
                    descended = true;
                    break;
                }
                if (on_stack[w]) low[v] = std::min(low[v], index[w]);
            }
            if (descended) continue;
            if (low[v] == index[v]) {
                std::vector<uint32_t> members;
                for (;;) {
                    uint32_t w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    members.push_back(w);
                    if (w == v) break;
                }
                std::sort(members.begin(), members.end());
                comps.push_back(std::move(members));
            }
            call.pop_back();
            if (!call.empty()) {
                uint32_t parent = call.back().v;
                low[parent] = std::min(low[parent], low[v]);
            }
        }
    }
    // Tarjan emits components in reverse topological order of the condensation
    std::reverse(comps.begin(), comps.end());
    SccPartition part;
    part.components = std::move(comps);
    part.comp_of.assign(n, 0);
    for (uint32_t c = 0; c < part.components.size(); ++c)
        for (uint32_t v : part.components[c]) part.comp_of[v] = c;
    return part;
}

NodeSet inv_masked(const FlowGraph& g, const NodeSet& b, const std::vector<char>& edge_alive) {
    const uint32_t n = g.node_count();
    NodeSet s = b;
    std::vector<uint32_t> indeg(n, 0), outdeg(n, 0);
    auto alive = [&](uint32_t e) { return edge_alive.empty() || edge_alive[e]; };
    for (uint32_t e = 0; e < g.edge_count(); ++e) {
        if (!alive(e)) continue;
        const Edge& ed = g.edge(e);
        if (s.contains(ed.tail) && s.contains(ed.head)) {
            ++outdeg[ed.tail];
            ++indeg[ed.head];
        }
    }
    std::deque<uint32_t> work;
    std::vector<char> queued(n, 0);
    for (uint32_t v : s.to_indices())
        if (indeg[v] == 0 || outdeg[v] == 0) {
            work.push_back(v);
            queued[v] = 1;
        }
    while (!work.empty()) {
        uint32_t v = work.front();
        work.pop_front();
        if (!s.contains(v)) continue;
        s.erase(v);
        for (uint32_t e : g.out_edges(v)) {
            if (!alive(e)) continue;
            uint32_t h = g.edge(e).head;
            if (h != v && s.contains(h) && --indeg[h] == 0 && !queued[h]) {
                work.push_back(h);
                queued[h] = 1;
            }
        }
        for (uint32_t e : g.in_edges(v)) {
            if (!alive(e)) continue;
            uint32_t t = g.edge(e).tail;
            if (t != v && s.contains(t) && --outdeg[t] == 0 && !queued[t]) {
                work.push_back(t);
                queued[t] = 1;
            }
        }
    }
    return s;
}

NodeSet inv(const FlowGraph& g, const NodeSet& b) { return inv_masked(g, b, {}); }

bool is_invariant(const FlowGraph& g, const NodeSet& z) { return inv(g, z) == z; }

bool is_isolating_block(const FlowGraph& g, const NodeSet& b, const NodeSet& z) {
    return inv(g, b) == z;
}

IsolatedInvariantSet find_isolating_block(const FlowGraph& g, const NodeSet& z,
                                          uint32_t radius) {
    if (!is_invariant(g, z))
        throw std::invalid_argument("find_isolating_block: z is not invariant");
    NodeSet b = z;
    NodeSet frontier = z;
    for (uint32_t r = 0; r < radius; ++r) {
        NodeSet next = g.empty_set();
        for (uint32_t v : frontier.to_indices()) {
            for (uint32_t e : g.out_edges(v)) {
                uint32_t h = g.edge(e).head;
                if (!b.contains(h)) next.insert(h);
            }
            for (uint32_t e : g.in_edges(v)) {
                uint32_t t = g.edge(e).tail;
                if (!b.contains(t)) next.insert(t);
            }
        }
        b |= next;
        frontier = next;
    }
    NodeSet iv = inv(g, b);
    if (iv != z) {
        std::vector<uint32_t> extra;
        for (uint32_t v : iv.to_indices())
            if (!z.contains(v)) extra.push_back(v);
        throw NotIsolated("candidate block is not isolating at radius " +
                              std::to_string(radius),
                          std::move(extra));
    }
    return IsolatedInvariantSet{z, b};
}

std::vector<std::vector<uint32_t>> z_components(const FlowGraph& g, const NodeSet& z) {
    std::vector<std::vector<uint32_t>> comps;
    NodeSet seen = g.empty_set();
    for (uint32_t seed = 0; seed < g.node_count(); ++seed) {
        if (!z.contains(seed) || seen.contains(seed)) continue;
        std::vector<uint32_t> members, queue{seed};
        seen.insert(seed);
        while (!queue.empty()) {
            uint32_t v = queue.back();
            queue.pop_back();
            members.push_back(v);
            auto visit = [&](uint32_t w) {
                if (z.contains(w) && !seen.contains(w)) {
                    seen.insert(w);
                    queue.push_back(w);
                }
            };
            for (uint32_t e : g.out_edges(v)) visit(g.edge(e).head);
            for (uint32_t e : g.in_edges(v)) visit(g.edge(e).tail);
        }
        std::sort(members.begin(), members.end());
        comps.push_back(std::move(members));
    }
    return comps;
}

}  // namespace lyapdual
