#include "lyapdual/cohomology.hpp"

#include <algorithm>
#include <stdexcept>

namespace lyapdual {

Cochain pairing(const FlowGraph& g, const CohomologyClass& xi) {
    if (xi.size() != g.basis_rank())
        throw std::invalid_argument("class rank does not match graph basis rank");
    Cochain w(g.edge_count());
    for (uint32_t e = 0; e < g.edge_count(); ++e) {
        Rat acc = 0;
        const auto& wt = g.edge(e).weight;
        for (size_t j = 0; j < xi.size(); ++j) acc += xi[j] * wt[j];
        acc.canonicalize();
        w[e] = acc;
    }
    return w;
}

Cochain coboundary(const FlowGraph& g, const Potential& f) {
    if (f.domain != g.full_set())
        throw std::invalid_argument("coboundary requires a total potential");
    Cochain d(g.edge_count());
    for (uint32_t e = 0; e < g.edge_count(); ++e)
        d[e] = f.value[g.edge(e).head] - f.value[g.edge(e).tail];
    return d;
}

namespace {

// Spanning-forest state for the subgraph induced on b.
struct Forest {
    std::vector<uint32_t> parent_edge;  // edge index into g, NONE at roots
    std::vector<int> parent_sign;       // +1 = entered along edge direction
    std::vector<uint32_t> parent;       // parent node, NONE at roots
    static constexpr uint32_t NONE = UINT32_MAX;
};

Potential forest_primitive(const FlowGraph& g, const Cochain& c, const NodeSet& b,
                           Forest* fo_out, std::vector<uint32_t>* depth_out) {
    if (c.size() != g.edge_count())
        throw std::invalid_argument("cochain length does not match edge count");
    const uint32_t n = g.node_count();
    Potential p(n);
    Forest fo;
    fo.parent_edge.assign(n, Forest::NONE);
    fo.parent_sign.assign(n, 0);
    fo.parent.assign(n, Forest::NONE);
    std::vector<uint32_t> depth(n, 0);

    NodeSet visited = g.empty_set();
    for (uint32_t root = 0; root < n; ++root) {
        if (!b.contains(root) || visited.contains(root)) continue;
        visited.insert(root);
        p.domain.insert(root);
        p.value[root] = 0;
        std::vector<uint32_t> queue{root};
        size_t qi = 0;
        while (qi < queue.size()) {
            uint32_t v = queue[qi++];
            auto relaxinto = [&](uint32_t w, uint32_t e, int sign) {
                // sign +1: edge points v -> w, value grows by c(e)
                if (!b.contains(w) || visited.contains(w)) return;
                visited.insert(w);
                p.domain.insert(w);
                p.value[w] = sign > 0 ? Rat(p.value[v] + c[e]) : Rat(p.value[v] - c[e]);
                p.value[w].canonicalize();
                fo.parent[w] = v;
                fo.parent_edge[w] = e;
                fo.parent_sign[w] = sign;
                depth[w] = depth[v] + 1;
                queue.push_back(w);
            };
            for (uint32_t e : g.out_edges(v)) relaxinto(g.edge(e).head, e, +1);
            for (uint32_t e : g.in_edges(v)) relaxinto(g.edge(e).tail, e, -1);
        }
    }
    if (fo_out) *fo_out = std::move(fo);
    if (depth_out) *depth_out = std::move(depth);
    return p;
}

}  // namespace

Potential tree_primitive(const FlowGraph& g, const Cochain& c, const NodeSet& b) {
    return forest_primitive(g, c, b, nullptr, nullptr);
}

Potential primitive_on(const FlowGraph& g, const Cochain& c, const NodeSet& b) {
    Forest fo;
    std::vector<uint32_t> depth;
    Potential p = forest_primitive(g, c, b, &fo, &depth);

    // verify every induced edge; build a witness cycle on the first failure
    for (uint32_t e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        if (!b.contains(ed.tail) || !b.contains(ed.head)) continue;
        Rat defect = c[e] - (p.value[ed.head] - p.value[ed.tail]);
        defect.canonicalize();
        if (defect == 0) continue;
        // cycle: e forward, then tree path head -> tail
        std::vector<SignedEdge> cyc{{e, +1}};
        // climb both endpoints to their common ancestor
        uint32_t a = ed.head, t = ed.tail;
        std::vector<SignedEdge> up_from_head, up_from_tail;
        while (a != t) {
            if (depth[a] >= depth[t] && fo.parent[a] != Forest::NONE) {
                up_from_head.emplace_back(fo.parent_edge[a], -fo.parent_sign[a]);
                a = fo.parent[a];
            } else {
                up_from_tail.emplace_back(fo.parent_edge[t], -fo.parent_sign[t]);
                t = fo.parent[t];
            }
        }
        for (auto& se : up_from_head) cyc.push_back(se);
        for (auto it = up_from_tail.rbegin(); it != up_from_tail.rend(); ++it)
            cyc.emplace_back(it->first, -it->second);
        throw NotExact("cochain is not exact on the requested node set", std::move(cyc),
                       rat_to_string(defect));
    }
    return p;
}

bool class_in_h_z(const FlowGraph& g, const CohomologyClass& xi, const NodeSet& b) {
    try {
        primitive_on(g, pairing(g, xi), b);
        return true;
    } catch (const NotExact&) {
        return false;
    }
}

Relativization relativize(const FlowGraph& g, const CohomologyClass& xi, const NodeSet& b) {
    Cochain w = pairing(g, xi);
    Potential gl;
    try {
        gl = primitive_on(g, w, b);
    } catch (NotExact& e) {
        throw NotInHZ("class does not vanish on the block", std::move(e.witness_cycle),
                      e.cycle_sum);
    }
    auto ghat = [&](uint32_t v) { return gl.domain.contains(v) ? gl.value[v] : Rat(0); };
    Relativization rel;
    rel.w_prime.resize(g.edge_count());
    for (uint32_t e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        Rat w2 = w[e] - (ghat(ed.head) - ghat(ed.tail));
        w2.canonicalize();
        rel.w_prime[e] = w2;
    }
    rel.g_local = std::move(gl);
    return rel;
}

Rat signed_sum(const Cochain& c, const std::vector<SignedEdge>& walk) {
    Rat acc = 0;
    for (const auto& [e, sign] : walk) acc += sign > 0 ? c[e] : Rat(-c[e]);
    acc.canonicalize();
    return acc;
}

}  // namespace lyapdual
