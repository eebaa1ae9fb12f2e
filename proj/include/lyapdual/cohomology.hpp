#pragma once

#include <cstdint>
#include <vector>

#include "lyapdual/errors.hpp"
#include "lyapdual/flow_graph.hpp"
#include "lyapdual/node_set.hpp"
#include "lyapdual/rational.hpp"

namespace lyapdual {

// Rational edge function, indexed by edge index.
using Cochain = std::vector<Rat>;

// Coefficient vector against the graph's weight basis, length basis_rank.
using CohomologyClass = std::vector<Rat>;

// Rational node function with an explicit (possibly partial) domain.
struct Potential {
    NodeSet domain;
    std::vector<Rat> value;  // size = node_count; meaningful on domain only

    explicit Potential(uint32_t n = 0) : domain(n), value(n) {}
};

// w_xi(e) = sum_j xi_j * weight_j(e). Throws std::invalid_argument on rank
// mismatch.
Cochain pairing(const FlowGraph& g, const CohomologyClass& xi);

// (delta f)(e) = f(head) - f(tail). Requires a total potential.
Cochain coboundary(const FlowGraph& g, const Potential& f);

// Primitive of c on the subgraph induced on b: per undirected component the
// least node index gets 0 and values propagate along a spanning forest; every
// induced edge is then verified. Throws NotExact with a witness cycle (signed
// edges inside b whose c-sum is nonzero) when c is not exact on b.
Potential primitive_on(const FlowGraph& g, const Cochain& c, const NodeSet& b);

// Forest propagation only: no exactness verification, so chords may carry
// nonzero defects c(e) - (p(head) - p(tail)). Defects are exactly the cycle
// sums over the chord's fundamental cycle.
Potential tree_primitive(const FlowGraph& g, const Cochain& c, const NodeSet& b);

// True iff pairing(g, xi) is exact on the subgraph induced on b.
bool class_in_h_z(const FlowGraph& g, const CohomologyClass& xi, const NodeSet& b);

struct Relativization {
    Cochain w_prime;   // w_xi - delta g_hat; zero on every edge inside b
    Potential g_local;  // primitive of w_xi on b (g_hat = g_local extended by 0)
};

// Subtracts the coboundary of a primitive-on-b so the class representative
// vanishes on b-internal edges; all cycle sums are preserved exactly.
// Throws NotInHZ when xi does not pair to an exact cochain on b.
Relativization relativize(const FlowGraph& g, const CohomologyClass& xi, const NodeSet& b);

// Sum of c along signed edges (sign -1 traverses against orientation).
Rat signed_sum(const Cochain& c, const std::vector<SignedEdge>& walk);

}  // namespace lyapdual
