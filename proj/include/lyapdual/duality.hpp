#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "lyapdual/cohomology.hpp"
#include "lyapdual/flow_graph.hpp"
#include "lyapdual/graph_algos.hpp"
#include "lyapdual/rational.hpp"

namespace lyapdual {

// Nonnegative edge flow witnessing that no Lyapunov representative exists:
// conserved at every node outside Z, balanced in/out per Z-component, zero on
// edges with both ends in Z, not identically zero.
struct CoherentCirculation {
    std::vector<Rat> flow;  // indexed by edge index
};

// lambda = w_xi - delta g_hat + delta f with lambda <= -slack off Z, zero on
// Z-internal edges, exact on the block, and representing xi.
struct LyapunovCertificate {
    CohomologyClass xi;
    Potential f;        // total; constant on each Z-component
    Potential g_local;  // primitive of w_xi on the block (domain = block)
    Cochain lambda;     // derived, stored for verification
    Rat slack;          // positive
};

struct Obstruction {
    CoherentCirculation circulation;
    Rat value;  // A_mu(xi), >= 0
};

// Exactly one branch.
using SolveOutcome = std::variant<LyapunovCertificate, Obstruction>;

inline bool is_lyapunov(const SolveOutcome& o) {
    return std::holds_alternative<LyapunovCertificate>(o);
}

// Decides the dichotomy for (g, ziso, xi): either a Lyapunov certificate in
// class xi or a coherent circulation with nonnegative value. Validates
// Inv(block) = z (InvalidIsolation) and xi in H_Z (NotInHZ). Exact; the
// internal strictness margin is 1/(n+1) after clearing denominators.
SolveOutcome solve(const FlowGraph& g, const IsolatedInvariantSet& ziso,
                   const CohomologyClass& xi, const std::atomic<bool>* cancel = nullptr);

struct VerifyReport {
    bool ok = true;
    std::vector<std::string> violations;
};

// Direct evaluation of the four certificate invariants: strict negativity off
// Z, vanishing on Z-internal edges, exactness on the block, and cycle-class
// equality with w_xi (spanning forest + chords).
VerifyReport verify_lyapunov(const FlowGraph& g, const IsolatedInvariantSet& ziso,
                             const LyapunovCertificate& cert);

// Direct evaluation of the circulation invariants: nonnegativity, nonzero
// support excluding Z-internal edges, conservation off Z, and per-component
// in/out balance.
VerifyReport verify_circulation(const FlowGraph& g, const NodeSet& z,
                                const CoherentCirculation& mu);

// Sum of mu(e) * w_prime(e) for the relativized representative of xi on the
// block; independent of the primitive chosen. Requires a valid circulation.
Rat asymptotic_cycle(const FlowGraph& g, const IsolatedInvariantSet& ziso,
                     const CoherentCirculation& mu, const CohomologyClass& xi);

// Exact Lyapunov potential for (g, chain_recurrent_set): f = -(longest-path
// index of the node's SCC in the condensation), so delta f = 0 inside
// recurrent SCCs and <= -1 across distinct SCCs.
Potential conley_lyapunov(const FlowGraph& g);

// Dichotomy for a finite zero set: z must be a union of self-loop
// singletons. Each singleton is isolated via find_isolating_block (errors
// NotIsolated naming the failing node); the solver core then runs with the
// union of the blocks, whose own isolation is not re-validated (only the
// per-point isolation is required).
SolveOutcome solve_finite_z(const FlowGraph& g, const NodeSet& z, const CohomologyClass& xi,
                            uint32_t radius = 1, const std::atomic<bool>* cancel = nullptr);

// One level cut: the subgraph drops the edges whose lambda-lift crosses the
// cut value; z = Inv of that subgraph over the full node set.
struct LevelCut {
    Rat cut;                          // in [0, 1)
    NodeSet z;                        // Inv of the cut subgraph
    NodeSet block;                    // full node set of the cut subgraph
    std::vector<uint32_t> cut_edges;  // removed edge indices, ascending
};

// All distinct level cuts of an integral-class certificate: a mod-1 primitive
// L of lambda is computed per weak component, one candidate cut is taken in
// each circular gap between consecutive distinct L-values, and cuts yielding
// the same z are deduplicated (first occurrence kept). Throws
// NonIntegralClass when lambda has a non-integer cycle sum.
std::vector<LevelCut> level_cut_blocks(const FlowGraph& g, const LyapunovCertificate& cert);

// Rebuilds lambda = w_xi - delta g_hat + delta f from the stored potentials
// (used after deserialization, which omits lambda).
Cochain reconstruct_lambda(const FlowGraph& g, const CohomologyClass& xi, const Potential& f,
                           const Potential& g_local);

}  // namespace lyapdual
