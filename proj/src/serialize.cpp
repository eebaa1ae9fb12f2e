#include "lyapdual/serialize.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace lyapdual {

namespace {

Rat rat_from_json(const Json& j) {
    if (j.is_string()) return rat_from_string(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long>());
    throw std::invalid_argument("expected a rational as \"p/q\" string or integer");
}

Json rat_json(const Rat& q) { return Json(rat_to_string(q)); }

CohomologyClass class_from_json(const FlowGraph& g, const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("xi must be an array");
    CohomologyClass xi;
    for (const Json& c : j) xi.push_back(rat_from_json(c));
    if (xi.size() != g.basis_rank())
        throw std::invalid_argument("xi has " + std::to_string(xi.size()) +
                                    " coefficients, graph basis rank is " +
                                    std::to_string(g.basis_rank()));
    return xi;
}

Json class_to_json(const CohomologyClass& xi) {
    Json a = Json::array();
    for (const Rat& c : xi) a.push_back(rat_json(c));
    return a;
}

std::vector<NodeId> sorted_ids(const FlowGraph& g) {
    std::vector<NodeId> ids;
    ids.reserve(g.node_count());
    for (uint32_t v = 0; v < g.node_count(); ++v) ids.push_back(g.id_of(v));
    std::sort(ids.begin(), ids.end());
    return ids;
}

}  // namespace

Json graph_to_json(const FlowGraph& g) {
    Json j;
    j["basis_rank"] = g.basis_rank();
    Json nodes = Json::array();
    for (uint32_t v = 0; v < g.node_count(); ++v) {
        Json n;
        n["id"] = g.id_of(v);
        if (g.coords_of(v)) n["coords"] = *g.coords_of(v);
        nodes.push_back(std::move(n));
    }
    j["nodes"] = std::move(nodes);
    Json edges = Json::array();
    for (uint32_t e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        Json je;
        je["tail"] = g.id_of(ed.tail);
        je["head"] = g.id_of(ed.head);
        Json w = Json::array();
        for (const Rat& c : ed.weight) w.push_back(rat_json(c));
        je["w"] = std::move(w);
        edges.push_back(std::move(je));
    }
    j["edges"] = std::move(edges);
    return j;
}

FlowGraph graph_from_json(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("graph file must be a JSON object");
    FlowGraph g(j.at("basis_rank").get<uint32_t>());
    for (const Json& n : j.at("nodes")) {
        NodeId id = n.at("id").get<NodeId>();
        std::optional<std::vector<int64_t>> coords;
        if (n.contains("coords")) coords = n.at("coords").get<std::vector<int64_t>>();
        g.add_node(id, std::move(coords));
    }
    if (j.contains("edges"))
        for (const Json& e : j.at("edges")) {
            std::vector<Rat> w;
            for (const Json& c : e.at("w")) w.push_back(rat_from_json(c));
            g.add_edge(e.at("tail").get<NodeId>(), e.at("head").get<NodeId>(), std::move(w));
        }
    return g;
}

Json node_set_to_json(const FlowGraph& g, const NodeSet& s) {
    std::vector<NodeId> ids = g.ids_of_set(s);
    std::sort(ids.begin(), ids.end());
    Json j;
    j["nodes"] = ids;
    return j;
}

NodeSet node_set_from_json(const FlowGraph& g, const Json& j) {
    if (!j.is_object() || !j.contains("nodes"))
        throw std::invalid_argument("node-set file must be {\"nodes\": [ids]}");
    return g.set_of_ids(j.at("nodes").get<std::vector<NodeId>>());
}

Json certificate_to_json(const FlowGraph& g, const CohomologyClass& xi, const SolveOutcome& o) {
    Json j;
    if (is_lyapunov(o)) {
        const auto& cert = std::get<LyapunovCertificate>(o);
        j["kind"] = "lyapunov";
        j["xi"] = class_to_json(xi);
        Json f = Json::object();
        for (NodeId id : sorted_ids(g))
            f[std::to_string(id)] = rat_json(cert.f.value[g.index_of(id)]);
        j["f"] = std::move(f);
        Json gl = Json::object();
        for (NodeId id : sorted_ids(g)) {
            uint32_t v = g.index_of(id);
            if (cert.g_local.domain.contains(v))
                gl[std::to_string(id)] = rat_json(cert.g_local.value[v]);
        }
        j["g_local"] = std::move(gl);
        j["slack"] = rat_json(cert.slack);
    } else {
        const auto& obs = std::get<Obstruction>(o);
        j["kind"] = "obstruction";
        j["xi"] = class_to_json(xi);
        Json c = Json::object();
        for (uint32_t e = 0; e < g.edge_count(); ++e)
            if (obs.circulation.flow[e] != 0)
                c[std::to_string(e)] = rat_json(obs.circulation.flow[e]);
        j["circulation"] = std::move(c);
        j["value"] = rat_json(obs.value);
    }
    return j;
}

LoadedCertificate certificate_from_json(const FlowGraph& g, const Json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw std::invalid_argument("certificate file must carry a \"kind\"");
    const std::string kind = j.at("kind").get<std::string>();
    LoadedCertificate out;
    out.xi = class_from_json(g, j.at("xi"));
    if (kind == "lyapunov") {
        Potential f(g.node_count());
        f.domain = g.full_set();
        uint32_t assigned = 0;
        for (const auto& [key, val] : j.at("f").items()) {
            NodeId id = std::stoll(key);
            if (!g.has_id(id)) throw std::invalid_argument("f names unknown node " + key);
            f.value[g.index_of(id)] = rat_from_json(val);
            ++assigned;
        }
        if (assigned != g.node_count())
            throw std::invalid_argument("f must assign a value to every node");
        Potential gl(g.node_count());
        for (const auto& [key, val] : j.at("g_local").items()) {
            NodeId id = std::stoll(key);
            if (!g.has_id(id)) throw std::invalid_argument("g_local names unknown node " + key);
            uint32_t v = g.index_of(id);
            gl.domain.insert(v);
            gl.value[v] = rat_from_json(val);
        }
        LyapunovCertificate cert;
        cert.xi = out.xi;
        cert.f = std::move(f);
        cert.g_local = std::move(gl);
        cert.lambda = reconstruct_lambda(g, cert.xi, cert.f, cert.g_local);
        cert.slack = rat_from_json(j.at("slack"));
        out.payload = std::move(cert);
    } else if (kind == "obstruction") {
        Obstruction obs;
        obs.circulation.flow.assign(g.edge_count(), Rat(0));
        for (const auto& [key, val] : j.at("circulation").items()) {
            size_t e = std::stoul(key);
            if (e >= g.edge_count())
                throw std::invalid_argument("circulation names unknown edge " + key);
            obs.circulation.flow[e] = rat_from_json(val);
        }
        obs.value = rat_from_json(j.at("value"));
        out.payload = std::move(obs);
    } else {
        throw std::invalid_argument("unknown certificate kind: " + kind);
    }
    return out;
}

DiscretizeConfig config_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("field") || !j.contains("grid"))
        throw std::invalid_argument("config must carry \"field\" and \"grid\" objects");
    const Json& jf = j.at("field");
    std::string kind = jf.at("kind").get<std::string>();
    uint32_t dim = jf.contains("dim") ? jf.at("dim").get<uint32_t>() : 2;
    std::map<std::string, double> params;
    for (const auto& [key, val] : jf.items()) {
        if (key == "kind" || key == "dim") continue;
        if (!val.is_number())
            throw std::invalid_argument("field parameter " + key + " must be numeric");
        params[key] = val.get<double>();
    }
    DiscretizeConfig cfg;
    cfg.field = catalog_field(kind, dim, params);

    const Json& jg = j.at("grid");
    const Json& jr = jg.at("resolution");
    if (jr.is_number_integer()) {
        cfg.grid.resolution.assign(dim, jr.get<uint32_t>());
    } else if (jr.is_array()) {
        cfg.grid.resolution = jr.get<std::vector<uint32_t>>();
        if (cfg.grid.resolution.size() != dim)
            throw std::invalid_argument("resolution must list one entry per axis");
    } else {
        throw std::invalid_argument("resolution must be an integer or an array");
    }
    cfg.grid.step = jg.at("h").get<double>();
    if (jg.contains("samples")) cfg.grid.samples = jg.at("samples").get<uint32_t>();
    if (jg.contains("epsilon")) cfg.grid.epsilon = jg.at("epsilon").get<double>();
    return cfg;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    return Json::parse(in);
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << j.dump(2) << "\n";
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

CohomologyClass parse_class(const std::string& comma_separated, uint32_t expected_rank) {
    CohomologyClass xi;
    std::string cur;
    auto flush = [&]() {
        size_t a = cur.find_first_not_of(" \t");
        size_t b = cur.find_last_not_of(" \t");
        if (a == std::string::npos) throw std::invalid_argument("empty class coefficient");
        xi.push_back(rat_from_string(cur.substr(a, b - a + 1)));
        cur.clear();
    };
    for (char ch : comma_separated) {
        if (ch == ',')
            flush();
        else
            cur += ch;
    }
    flush();
    if (xi.size() != expected_rank)
        throw std::invalid_argument("class has " + std::to_string(xi.size()) +
                                    " coefficients, expected " + std::to_string(expected_rank));
    return xi;
}

}  // namespace lyapdual
