// Command-line front end: discretize vector fields into flow graphs, analyze
// recurrence, decide the Lyapunov-cocycle/circulation dichotomy, verify
// certificates, compute level cuts, and export DOT/CSV.
//
// Exit codes: 0 success (solve: certificate found), 1 verification failed,
// 2 bad input, 3 step too large, 10 obstruction found, 11 class not exact
// near z, 12 isolation failure, 13 non-integral class.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lyapdual/discretize.hpp"
#include "lyapdual/duality.hpp"
#include "lyapdual/errors.hpp"
#include "lyapdual/recurrence.hpp"
#include "lyapdual/serialize.hpp"

using namespace lyapdual;

namespace {

struct ZFlags {
    std::string z_file;
    double auto_z_threshold = -1.0;
    std::string config_file;  // required by --auto-z
};

struct BlockFlags {
    std::string block_file;
    uint32_t auto_block_radius = 1;
};

void add_z_flags(CLI::App* cmd, ZFlags& f) {
    cmd->add_option("--z", f.z_file, "node-set file holding z")->check(CLI::ExistingFile);
    cmd->add_option("--auto-z", f.auto_z_threshold,
                    "mark cells with sampled field magnitude <= threshold (needs --config)");
    cmd->add_option("--config", f.config_file, "discretizer config, required by --auto-z")
        ->check(CLI::ExistingFile);
}

void add_block_flags(CLI::App* cmd, BlockFlags& f) {
    cmd->add_option("--block", f.block_file, "node-set file holding the isolating block")
        ->check(CLI::ExistingFile);
    cmd->add_option("--auto-block", f.auto_block_radius,
                    "grow the block this many edge steps around z (default 1)");
}

NodeSet resolve_z(const FlowGraph& g, const ZFlags& f) {
    if (!f.z_file.empty() && f.auto_z_threshold > 0)
        throw std::invalid_argument("--z and --auto-z are mutually exclusive");
    if (!f.z_file.empty()) return node_set_from_json(g, load_json_file(f.z_file));
    if (f.auto_z_threshold > 0) {
        if (f.config_file.empty())
            throw std::invalid_argument("--auto-z needs --config to recover the field and grid");
        DiscretizeConfig cfg = config_from_json(load_json_file(f.config_file));
        NodeSet cells = mark_zero_set(cfg.field, cfg.grid, f.auto_z_threshold);
        std::vector<NodeId> ids;
        for (uint32_t c : cells.to_indices()) ids.push_back(static_cast<NodeId>(c));
        return g.set_of_ids(ids);
    }
    return g.empty_set();
}

IsolatedInvariantSet resolve_ziso(const FlowGraph& g, const NodeSet& z, const BlockFlags& f) {
    if (!f.block_file.empty())
        return IsolatedInvariantSet{z, node_set_from_json(g, load_json_file(f.block_file))};
    return find_isolating_block(g, z, f.auto_block_radius);
}

std::string join_ids(const FlowGraph& g, const NodeSet& s) {
    std::vector<NodeId> ids = g.ids_of_set(s);
    std::sort(ids.begin(), ids.end());
    std::ostringstream out;
    for (size_t i = 0; i < ids.size(); ++i) out << (i ? " " : "") << ids[i];
    return out.str();
}

void emit(const std::string& out_path, const Json& j) {
    if (out_path.empty())
        std::cout << dump_json(j);
    else
        write_json_file(out_path, j);
}

int run_discretize(const std::string& config_path, const std::string& out_path) {
    DiscretizeConfig cfg = config_from_json(load_json_file(config_path));
    FlowGraph g = build_graph(cfg.field, cfg.grid);
    write_json_file(out_path, graph_to_json(g));
    std::cout << "wrote " << out_path << ": " << g.node_count() << " nodes, " << g.edge_count()
              << " edges\n";
    return 0;
}

int run_analyze(const std::string& graph_path, bool want_r, bool want_rxi,
                const std::string& xi_text, bool as_json) {
    FlowGraph g = graph_from_json(load_json_file(graph_path));
    if (!want_r && !want_rxi) want_r = true;
    Json j = Json::object();
    std::ostringstream text;
    if (want_r) {
        NodeSet r = chain_recurrent_set(g);
        j["R"] = node_set_to_json(g, r);
        text << "R: " << join_ids(g, r) << "\n";
    }
    if (want_rxi) {
        if (xi_text.empty()) throw std::invalid_argument("--rxi needs --xi");
        NodeSet r = r_xi_set(g, parse_class(xi_text, g.basis_rank()));
        j["R_xi"] = node_set_to_json(g, r);
        text << "R_xi: " << join_ids(g, r) << "\n";
    }
    if (as_json)
        std::cout << dump_json(j);
    else
        std::cout << text.str();
    return 0;
}

int run_solve(const std::string& graph_path, const ZFlags& zf, const BlockFlags& bf,
              const std::string& xi_text, const std::string& out_path) {
    FlowGraph g = graph_from_json(load_json_file(graph_path));
    CohomologyClass xi = parse_class(xi_text, g.basis_rank());
    NodeSet z = resolve_z(g, zf);
    IsolatedInvariantSet ziso = resolve_ziso(g, z, bf);
    SolveOutcome outcome = solve(g, ziso, xi);
    if (!out_path.empty()) write_json_file(out_path, certificate_to_json(g, xi, outcome));
    if (is_lyapunov(outcome)) {
        std::cout << "lyapunov slack=" << rat_to_string(std::get<LyapunovCertificate>(outcome).slack)
                  << "\n";
        return 0;
    }
    std::cout << "obstruction value=" << rat_to_string(std::get<Obstruction>(outcome).value)
              << "\n";
    return 10;
}

int run_verify(const std::string& graph_path, const std::string& cert_path, const ZFlags& zf,
               const BlockFlags& bf) {
    FlowGraph g = graph_from_json(load_json_file(graph_path));
    LoadedCertificate loaded = certificate_from_json(g, load_json_file(cert_path));
    NodeSet z = resolve_z(g, zf);
    VerifyReport rep;
    if (std::holds_alternative<LyapunovCertificate>(loaded.payload)) {
        IsolatedInvariantSet ziso = resolve_ziso(g, z, bf);
        rep = verify_lyapunov(g, ziso, std::get<LyapunovCertificate>(loaded.payload));
    } else {
        const Obstruction& obs = std::get<Obstruction>(loaded.payload);
        rep = verify_circulation(g, z, obs.circulation);
        if (rep.ok) {
            IsolatedInvariantSet ziso = resolve_ziso(g, z, bf);
            Rat a = asymptotic_cycle(g, ziso, obs.circulation, loaded.xi);
            if (a != obs.value) {
                rep.ok = false;
                rep.violations.push_back("stored value " + rat_to_string(obs.value) +
                                         " differs from recomputed " + rat_to_string(a));
            }
            if (a < 0) {
                rep.ok = false;
                rep.violations.push_back("value " + rat_to_string(a) + " is negative");
            }
        }
    }
    if (rep.ok) {
        std::cout << "ok\n";
        return 0;
    }
    for (const std::string& v : rep.violations) std::cout << "violation: " << v << "\n";
    return 1;
}

int run_cut(const std::string& graph_path, const std::string& cert_path,
            const std::string& out_path) {
    FlowGraph g = graph_from_json(load_json_file(graph_path));
    LoadedCertificate loaded = certificate_from_json(g, load_json_file(cert_path));
    if (!std::holds_alternative<LyapunovCertificate>(loaded.payload))
        throw std::invalid_argument("level cuts need a lyapunov certificate");
    std::vector<LevelCut> cuts = level_cut_blocks(g, std::get<LyapunovCertificate>(loaded.payload));
    Json arr = Json::array();
    for (const LevelCut& c : cuts) {
        Json jc;
        jc["cut"] = rat_to_string(c.cut);
        jc["z"] = node_set_to_json(g, c.z);
        jc["block"] = node_set_to_json(g, c.block);
        jc["cut_edges"] = c.cut_edges;
        arr.push_back(std::move(jc));
    }
    Json j;
    j["cuts"] = std::move(arr);
    emit(out_path, j);
    return 0;
}

int run_export(const std::string& graph_path, bool as_dot, bool as_csv,
               const std::vector<std::string>& mark_files, const std::string& heat_cert,
               const std::string& out_path) {
    if (as_dot == as_csv) throw std::invalid_argument("pick exactly one of --dot / --csv");
    FlowGraph g = graph_from_json(load_json_file(graph_path));
    NodeSet marked = g.empty_set();
    for (const std::string& f : mark_files)
        marked |= node_set_from_json(g, load_json_file(f));
    Cochain heat;
    if (!heat_cert.empty()) {
        LoadedCertificate loaded = certificate_from_json(g, load_json_file(heat_cert));
        if (std::holds_alternative<LyapunovCertificate>(loaded.payload))
            heat = std::get<LyapunovCertificate>(loaded.payload).lambda;
        else
            heat = std::get<Obstruction>(loaded.payload).circulation.flow;
    }
    std::ostringstream out;
    auto weight_text = [&](uint32_t e, char sep) {
        std::ostringstream w;
        const Edge& ed = g.edge(e);
        for (size_t i = 0; i < ed.weight.size(); ++i)
            w << (i ? std::string(1, sep) : "") << rat_to_string(ed.weight[i]);
        return w.str();
    };
    if (as_dot) {
        out << "digraph flow {\n";
        for (uint32_t v = 0; v < g.node_count(); ++v) {
            out << "  " << g.id_of(v);
            if (marked.contains(v)) out << " [color=red]";
            out << ";\n";
        }
        for (uint32_t e = 0; e < g.edge_count(); ++e) {
            const Edge& ed = g.edge(e);
            out << "  " << g.id_of(ed.tail) << " -> " << g.id_of(ed.head) << " [label=\"("
                << weight_text(e, ',') << ")";
            if (!heat.empty()) out << " | " << rat_to_string(heat[e]);
            out << "\"];\n";
        }
        out << "}\n";
    } else {
        for (uint32_t e = 0; e < g.edge_count(); ++e) {
            const Edge& ed = g.edge(e);
            out << g.id_of(ed.tail) << "," << g.id_of(ed.head) << "," << weight_text(e, ',');
            if (!heat.empty()) out << "," << rat_to_string(heat[e]);
            out << "\n";
        }
    }
    if (out_path.empty()) {
        std::cout << out.str();
    } else {
        std::ofstream f(out_path);
        if (!f) throw std::invalid_argument("cannot write " + out_path);
        f << out.str();
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lyapunov cocycle / circulation duality on flow graphs"};
    app.require_subcommand(1);

    auto* disc = app.add_subcommand("discretize", "build a flow graph from a field config");
    std::string disc_config, disc_out;
    disc->add_option("--config", disc_config, "field/grid JSON config")
        ->required()
        ->check(CLI::ExistingFile);
    disc->add_option("--out", disc_out, "graph file to write")->required();

    auto* ana = app.add_subcommand("analyze", "recurrence analysis");
    std::string ana_graph, ana_xi;
    bool ana_r = false, ana_rxi = false, ana_json = false;
    ana->add_option("graph", ana_graph, "graph file")->required()->check(CLI::ExistingFile);
    ana->add_flag("-R,--recurrent", ana_r, "chain recurrent set");
    ana->add_flag("--rxi", ana_rxi, "nodes on zero-weight closed walks for --xi");
    ana->add_option("--xi", ana_xi, "class coefficients, comma separated");
    ana->add_flag("--json", ana_json, "JSON output");

    auto* sol = app.add_subcommand("solve", "decide the dichotomy for (graph, z, xi)");
    std::string sol_graph, sol_xi, sol_out;
    ZFlags sol_zf;
    BlockFlags sol_bf;
    sol->add_option("graph", sol_graph, "graph file")->required()->check(CLI::ExistingFile);
    sol->add_option("--xi", sol_xi, "class coefficients, comma separated")->required();
    add_z_flags(sol, sol_zf);
    add_block_flags(sol, sol_bf);
    sol->add_option("--out", sol_out, "certificate file to write");

    auto* ver = app.add_subcommand("verify", "check a certificate against a graph and z");
    std::string ver_graph, ver_cert;
    ZFlags ver_zf;
    BlockFlags ver_bf;
    ver->add_option("graph", ver_graph, "graph file")->required()->check(CLI::ExistingFile);
    ver->add_option("certificate", ver_cert, "certificate file")
        ->required()
        ->check(CLI::ExistingFile);
    add_z_flags(ver, ver_zf);
    add_block_flags(ver, ver_bf);

    auto* cut = app.add_subcommand("cut", "level cuts of an integral-class certificate");
    std::string cut_graph, cut_cert, cut_out;
    cut->add_option("graph", cut_graph, "graph file")->required()->check(CLI::ExistingFile);
    cut->add_option("certificate", cut_cert, "certificate file")
        ->required()
        ->check(CLI::ExistingFile);
    cut->add_option("--out", cut_out, "output file (stdout when absent)");

    auto* exp = app.add_subcommand("export", "DOT or CSV dump with overlays");
    std::string exp_graph, exp_heat, exp_out;
    std::vector<std::string> exp_marks;
    bool exp_dot = false, exp_csv = false;
    exp->add_option("graph", exp_graph, "graph file")->required()->check(CLI::ExistingFile);
    exp->add_flag("--dot", exp_dot, "GraphViz DOT output");
    exp->add_flag("--csv", exp_csv, "CSV edge list output");
    exp->add_option("--mark", exp_marks, "node-set file to highlight (repeatable)")
        ->check(CLI::ExistingFile);
    exp->add_option("--heat", exp_heat, "certificate file; edge heat column/label");
    exp->add_option("--out", exp_out, "output file (stdout when absent)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*disc) return run_discretize(disc_config, disc_out);
        if (*ana) return run_analyze(ana_graph, ana_r, ana_rxi, ana_xi, ana_json);
        if (*sol) return run_solve(sol_graph, sol_zf, sol_bf, sol_xi, sol_out);
        if (*ver) return run_verify(ver_graph, ver_cert, ver_zf, ver_bf);
        if (*cut) return run_cut(cut_graph, cut_cert, cut_out);
        if (*exp) return run_export(exp_graph, exp_dot, exp_csv, exp_marks, exp_heat, exp_out);
    } catch (const StepTooLarge& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const NotInHZ& e) {
        std::cerr << "error: class not exact near z: " << e.what() << "\n";
        return 11;
    } catch (const NotIsolated& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 12;
    } catch (const InvalidIsolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 12;
    } catch (const NonIntegralClass& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 13;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
