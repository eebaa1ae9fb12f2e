#include "lyapdual/duality.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "lyapdual/difference_constraints.hpp"
#include "lyapdual/errors.hpp"
#include "lyapdual/recurrence.hpp"

namespace lyapdual {

namespace {

std::string edge_name(const FlowGraph& g, uint32_t e) {
    const Edge& ed = g.edge(e);
    return "edge " + std::to_string(e) + " (" + std::to_string(g.id_of(ed.tail)) + "->" +
           std::to_string(g.id_of(ed.head)) + ")";
}

struct Contraction {
    uint32_t n_c = 0;               // contracted node count
    std::vector<uint32_t> cid;      // original node index -> contracted index
    std::vector<uint32_t> kept;     // edge indices with at least one end off z
};

// Non-z nodes keep their relative order; each z-component becomes one node.
Contraction contract_z(const FlowGraph& g, const NodeSet& z) {
    Contraction con;
    con.cid.assign(g.node_count(), 0);
    uint32_t next = 0;
    for (uint32_t v = 0; v < g.node_count(); ++v)
        if (!z.contains(v)) con.cid[v] = next++;
    for (const auto& comp : z_components(g, z)) {
        for (uint32_t v : comp) con.cid[v] = next;
        ++next;
    }
    con.n_c = next;
    for (uint32_t e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        if (!(z.contains(ed.tail) && z.contains(ed.head))) con.kept.push_back(e);
    }
    return con;
}

// Dichotomy core; isolation of the pair is the caller's responsibility.
SolveOutcome solve_core(const FlowGraph& g, const IsolatedInvariantSet& ziso,
                        const CohomologyClass& xi, const std::atomic<bool>* cancel) {
    Relativization rel = relativize(g, xi, ziso.block);
    Contraction con = contract_z(g, ziso.z);

    std::vector<Rat> vals;
    vals.reserve(con.kept.size());
    for (uint32_t e : con.kept) vals.push_back(rel.w_prime[e]);
    const Int m = denominator_lcm(vals);
    const Int scale = Int(con.n_c) + 1;

    // d[head] <= d[tail] - scale*W(e) - 1: any simple cycle is infeasible
    // exactly when its integer weight sum is >= 0 (|cycle| <= n_c < scale)
    std::vector<Arc> arcs;
    arcs.reserve(con.kept.size());
    for (size_t i = 0; i < con.kept.size(); ++i) {
        const Edge& ed = g.edge(con.kept[i]);
        Rat scaled = vals[i] * Rat(m);
        scaled.canonicalize();
        Arc a;
        a.tail = con.cid[ed.tail];
        a.head = con.cid[ed.head];
        a.cost = -scale * Int(scaled.get_num()) - 1;
        arcs.push_back(std::move(a));
    }

    RelaxResult rr = relax_difference_system(con.n_c, arcs, cancel);
    if (rr.feasible) {
        LyapunovCertificate cert;
        cert.xi = xi;
        cert.f = Potential(g.node_count());
        cert.f.domain = g.full_set();
        const Int denom = scale * m;
        for (uint32_t v = 0; v < g.node_count(); ++v) {
            Rat fv(rr.potential[con.cid[v]], denom);
            fv.canonicalize();
            cert.f.value[v] = fv;
        }
        cert.g_local = rel.g_local;
        cert.lambda.resize(g.edge_count());
        bool any_kept = false;
        for (uint32_t e = 0; e < g.edge_count(); ++e) {
            const Edge& ed = g.edge(e);
            Rat l = rel.w_prime[e] + cert.f.value[ed.head] - cert.f.value[ed.tail];
            l.canonicalize();
            cert.lambda[e] = l;
        }
        Rat slack(1);
        for (uint32_t e : con.kept) {
            Rat gap = -cert.lambda[e];
            if (!any_kept || gap < slack) slack = gap;
            any_kept = true;
        }
        cert.slack = slack;
        return cert;
    }

    Obstruction obs;
    obs.circulation.flow.assign(g.edge_count(), Rat(0));
    obs.value = Rat(0);
    for (uint32_t arc_idx : rr.negative_cycle) {
        uint32_t e = con.kept[arc_idx];
        obs.circulation.flow[e] += 1;
        obs.value += rel.w_prime[e];
    }
    obs.value.canonicalize();
    return obs;
}

}  // namespace

SolveOutcome solve(const FlowGraph& g, const IsolatedInvariantSet& ziso,
                   const CohomologyClass& xi, const std::atomic<bool>* cancel) {
    if (ziso.z.universe() != g.node_count() || ziso.block.universe() != g.node_count())
        throw std::invalid_argument("node set universe does not match the graph");
    if (!ziso.z.subset_of(ziso.block))
        throw InvalidIsolation("z is not contained in its block");
    if (!is_isolating_block(g, ziso.block, ziso.z))
        throw InvalidIsolation("the maximal invariant subset of the block differs from z");
    return solve_core(g, ziso, xi, cancel);
}

VerifyReport verify_lyapunov(const FlowGraph& g, const IsolatedInvariantSet& ziso,
                             const LyapunovCertificate& cert) {
    VerifyReport rep;
    auto fail = [&rep](std::string s) {
        rep.ok = false;
        rep.violations.push_back(std::move(s));
    };
    if (cert.lambda.size() != g.edge_count()) {
        fail("lambda is defined on " + std::to_string(cert.lambda.size()) + " edges, graph has " +
             std::to_string(g.edge_count()));
        return rep;
    }
    if (!(cert.slack > 0)) fail("slack " + rat_to_string(cert.slack) + " is not positive");
    for (uint32_t e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        bool internal = ziso.z.contains(ed.tail) && ziso.z.contains(ed.head);
        if (internal) {
            if (cert.lambda[e] != 0)
                fail(edge_name(g, e) + ": lambda = " + rat_to_string(cert.lambda[e]) +
                     " nonzero on an edge inside z");
        } else if (!(cert.lambda[e] <= -cert.slack)) {
            fail(edge_name(g, e) + ": lambda = " + rat_to_string(cert.lambda[e]) +
                 " is above -slack = " + rat_to_string(-cert.slack));
        }
    }
    try {
        primitive_on(g, cert.lambda, ziso.block);
    } catch (const NotExact& ex) {
        fail(std::string("lambda is not exact on the block: cycle sum ") + ex.cycle_sum);
    }
    try {
        Cochain w = pairing(g, cert.xi);
        Cochain diff(g.edge_count());
        for (uint32_t e = 0; e < g.edge_count(); ++e) {
            diff[e] = cert.lambda[e] - w[e];
            diff[e].canonicalize();
        }
        primitive_on(g, diff, g.full_set());
    } catch (const NotExact& ex) {
        fail(std::string("lambda does not represent the class: cycle sum off by ") +
             ex.cycle_sum);
    } catch (const std::invalid_argument& ex) {
        fail(std::string("class/graph mismatch: ") + ex.what());
    }
    return rep;
}

VerifyReport verify_circulation(const FlowGraph& g, const NodeSet& z,
                                const CoherentCirculation& mu) {
    VerifyReport rep;
    auto fail = [&rep](std::string s) {
        rep.ok = false;
        rep.violations.push_back(std::move(s));
    };
    if (mu.flow.size() != g.edge_count()) {
        fail("flow is defined on " + std::to_string(mu.flow.size()) + " edges, graph has " +
             std::to_string(g.edge_count()));
        return rep;
    }
    bool all_zero = true;
    for (uint32_t e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        if (mu.flow[e] < 0) fail(edge_name(g, e) + ": negative flow " + rat_to_string(mu.flow[e]));
        if (mu.flow[e] != 0) {
            all_zero = false;
            if (z.contains(ed.tail) && z.contains(ed.head))
                fail(edge_name(g, e) + ": support touches an edge inside z");
        }
    }
    if (all_zero) fail("flow is identically zero");
    std::vector<Rat> net(g.node_count(), Rat(0));
    for (uint32_t e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        net[ed.head] += mu.flow[e];
        net[ed.tail] -= mu.flow[e];
    }
    for (uint32_t v = 0; v < g.node_count(); ++v) {
        if (z.contains(v)) continue;
        if (net[v] != 0)
            fail("node " + std::to_string(g.id_of(v)) + ": inflow differs from outflow by " +
                 rat_to_string(net[v]));
    }
    for (const auto& comp : z_components(g, z)) {
        Rat total(0);
        for (uint32_t v : comp) total += net[v];
        total.canonicalize();
        if (total != 0)
            fail("z-component containing node " + std::to_string(g.id_of(comp[0])) +
                 ": in/out balance off by " + rat_to_string(total));
    }
    return rep;
}

Rat asymptotic_cycle(const FlowGraph& g, const IsolatedInvariantSet& ziso,
                     const CoherentCirculation& mu, const CohomologyClass& xi) {
    Relativization rel = relativize(g, xi, ziso.block);
    if (mu.flow.size() != g.edge_count())
        throw std::invalid_argument("flow size does not match the edge count");
    Rat total(0);
    for (uint32_t e = 0; e < g.edge_count(); ++e) total += mu.flow[e] * rel.w_prime[e];
    total.canonicalize();
    return total;
}

Potential conley_lyapunov(const FlowGraph& g) {
    SccPartition parts = scc(g);
    const size_t n_comp = parts.components.size();
    // longest-path index over the condensation; components arrive in
    // topological order, so a single pass settles every rank
    std::vector<long> rank(n_comp, 0);
    for (size_t c = 0; c < n_comp; ++c)
        for (uint32_t v : parts.components[c])
            for (uint32_t e : g.out_edges(v)) {
                uint32_t d = parts.comp_of[g.edge(e).head];
                if (d != c) rank[d] = std::max(rank[d], rank[c] + 1);
            }
    Potential f(g.node_count());
    f.domain = g.full_set();
    for (uint32_t v = 0; v < g.node_count(); ++v) f.value[v] = Rat(-rank[parts.comp_of[v]]);
    return f;
}

SolveOutcome solve_finite_z(const FlowGraph& g, const NodeSet& z, const CohomologyClass& xi,
                            uint32_t radius, const std::atomic<bool>* cancel) {
    if (z.universe() != g.node_count())
        throw std::invalid_argument("node set universe does not match the graph");
    NodeSet union_block = g.empty_set();
    for (uint32_t v : z.to_indices()) {
        NodeSet single = g.empty_set();
        single.insert(v);
        try {
            IsolatedInvariantSet iso = find_isolating_block(g, single, radius);
            union_block |= iso.block;
        } catch (const NotIsolated& ex) {
            throw NotIsolated("node " + std::to_string(g.id_of(v)) +
                                  " is not an isolated invariant set at radius " +
                                  std::to_string(radius),
                              ex.extra_nodes);
        }
    }
    // isolation is required point by point; the union block itself is only a
    // neighborhood on which the class must vanish
    return solve_core(g, IsolatedInvariantSet{z, union_block}, xi, cancel);
}

std::vector<LevelCut> level_cut_blocks(const FlowGraph& g, const LyapunovCertificate& cert) {
    if (cert.lambda.size() != g.edge_count())
        throw std::invalid_argument("lambda size does not match the edge count");
    Potential lift = tree_primitive(g, cert.lambda, g.full_set());
    for (uint32_t e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        Rat defect = cert.lambda[e] - (lift.value[ed.head] - lift.value[ed.tail]);
        defect.canonicalize();
        if (!rat_is_integer(defect))
            throw NonIntegralClass(edge_name(g, e) + ": cycle defect " + rat_to_string(defect) +
                                   " is not an integer");
    }

    std::set<Rat> distinct;
    for (uint32_t v = 0; v < g.node_count(); ++v) distinct.insert(rat_mod1(lift.value[v]));
    std::vector<LevelCut> cuts;
    if (distinct.empty()) return cuts;

    std::vector<Rat> levels(distinct.begin(), distinct.end());
    std::vector<Rat> candidates;
    if (levels.size() == 1) {
        candidates.push_back(rat_mod1(levels[0] + Rat(1, 2)));
    } else {
        for (size_t i = 0; i + 1 < levels.size(); ++i) {
            Rat mid = (levels[i] + levels[i + 1]) / 2;
            mid.canonicalize();
            candidates.push_back(mid);
        }
        Rat wrap = (levels.back() + levels.front() + 1) / 2;
        candidates.push_back(rat_mod1(wrap));
    }
    std::sort(candidates.begin(), candidates.end());

    for (const Rat& s : candidates) {
        std::vector<char> alive(g.edge_count(), 1);
        std::vector<uint32_t> removed;
        for (uint32_t e = 0; e < g.edge_count(); ++e) {
            const Edge& ed = g.edge(e);
            Rat a = lift.value[ed.tail];
            Rat b = lift.value[ed.tail] + cert.lambda[e];
            if (b < a) std::swap(a, b);
            // the lift segment [a, b] crosses s + k for some integer k
            if (rat_floor(b - s) != rat_floor(a - s)) {
                alive[e] = 0;
                removed.push_back(e);
            }
        }
        NodeSet zs = inv_masked(g, g.full_set(), alive);
        bool seen = false;
        for (const LevelCut& c : cuts)
            if (c.z == zs) {
                seen = true;
                break;
            }
        if (!seen) cuts.push_back(LevelCut{s, zs, g.full_set(), std::move(removed)});
    }
    return cuts;
}

Cochain reconstruct_lambda(const FlowGraph& g, const CohomologyClass& xi, const Potential& f,
                           const Potential& g_local) {
    if (f.domain != g.full_set())
        throw std::invalid_argument("the global potential must be total");
    Cochain lambda = pairing(g, xi);
    auto ghat = [&](uint32_t v) { return g_local.domain.contains(v) ? g_local.value[v] : Rat(0); };
    for (uint32_t e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        lambda[e] += -(ghat(ed.head) - ghat(ed.tail)) + (f.value[ed.head] - f.value[ed.tail]);
        lambda[e].canonicalize();
    }
    return lambda;
}

}  // namespace lyapdual
