#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "lyapdual/cohomology.hpp"
#include "lyapdual/discretize.hpp"
#include "lyapdual/duality.hpp"
#include "lyapdual/flow_graph.hpp"

namespace lyapdual {

using Json = nlohmann::ordered_json;

// Graph file: {"basis_rank": k, "nodes": [{"id": int, "coords": [...]}, ...],
// "edges": [{"tail": id, "head": id, "w": ["p/q", ...]}, ...]}.
Json graph_to_json(const FlowGraph& g);
FlowGraph graph_from_json(const Json& j);

// Node-set file: {"nodes": [ids ascending]}.
Json node_set_to_json(const FlowGraph& g, const NodeSet& s);
NodeSet node_set_from_json(const FlowGraph& g, const Json& j);

// Certificate files; edge indices refer to the graph file's edge order.
// {"kind": "lyapunov", "xi": [...], "f": {id: "p/q"}, "g_local": {...},
//  "slack": "p/q"} or
// {"kind": "obstruction", "xi": [...], "circulation": {idx: "p/q"},
//  "value": "p/q"}.
Json certificate_to_json(const FlowGraph& g, const CohomologyClass& xi, const SolveOutcome& o);

struct LoadedCertificate {
    CohomologyClass xi;
    // Lyapunov: lambda reconstructed from the potentials.
    std::variant<LyapunovCertificate, Obstruction> payload;
};
LoadedCertificate certificate_from_json(const FlowGraph& g, const Json& j);

// Discretizer config: {"field": {"kind": ..., "dim": ..., params...},
// "grid": {"resolution": int or [...], "h": ..., "samples": ..., "epsilon": ...}}.
struct DiscretizeConfig {
    TorusField field;
    GridSpec grid;
};
DiscretizeConfig config_from_json(const Json& j);

Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);
std::string dump_json(const Json& j);

CohomologyClass parse_class(const std::string& comma_separated, uint32_t expected_rank);

}  // namespace lyapdual
