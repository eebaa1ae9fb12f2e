#include <doctest.h>

#include <filesystem>
#include <string>
#include <vector>

#include "lyapdual/discretize.hpp"
#include "lyapdual/duality.hpp"
#include "lyapdual/graph_algos.hpp"
#include "lyapdual/recurrence.hpp"
#include "lyapdual/serialize.hpp"
#include "test_util.hpp"

using namespace lyapdual;
using testutil::CliResult;
using testutil::Rng;
using testutil::fresh_dir;
using testutil::run_cmd;

namespace {

const std::string kBin = CLI_BINARY;

std::string q(const std::string& path) { return "\"" + path + "\""; }

// Compare against the committed reference output; write it on first use so
// the suite can bootstrap its own fixtures.
void golden_check(const std::string& name, const std::string& actual) {
  namespace fs = std::filesystem;
  fs::path dir(GOLDEN_DIR);
  fs::create_directories(dir);
  fs::path file = dir / name;
  if (!fs::exists(file)) {
    testutil::write_text(file.string(), actual);
    WARN_MESSAGE(false, "bootstrapped missing golden file " << file.string());
    return;
  }
  CHECK_MESSAGE(testutil::read_text(file.string()) == actual, "golden mismatch for " << name);
}

// The two-loop seven-node fixture used across solve/verify/export checks.
struct LoopFixture {
  std::string dir, graph, z;
  FlowGraph g{2};
  LoopFixture() : dir(fresh_dir("cli_loop")), g(testutil::loop_pattern_graph()) {
    graph = dir + "/graph.json";
    z = dir + "/z.json";
    write_json_file(graph, graph_to_json(g));
    write_json_file(z, Json{{"nodes", Json::array({0})}});
  }
};

}  // namespace

TEST_CASE("discretize writes exactly the library's graph file") {
  std::string dir = fresh_dir("cli_disc");
  Json cfg;
  cfg["field"] = Json{{"kind", "gradient"}};
  cfg["grid"] = Json{{"resolution", 8}, {"h", 0.125}};
  write_json_file(dir + "/cfg.json", cfg);
  CliResult r = run_cmd(kBin + " discretize --config " + q(dir + "/cfg.json") + " --out " +
                        q(dir + "/g.json"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("64 nodes") != std::string::npos);
  DiscretizeConfig parsed = config_from_json(cfg);
  FlowGraph expect = build_graph(parsed.field, parsed.grid);
  CHECK(testutil::read_text(dir + "/g.json") == dump_json(graph_to_json(expect)));
}

TEST_CASE("analyze matches the library on random graphs") {
  Rng rng(80001);
  std::string dir = fresh_dir("cli_analyze");
  for (int t = 0; t < 25; ++t) {
    uint32_t rank = 1 + (t % 2);
    FlowGraph g = testutil::random_graph(rng, 8, 18, rank);
    std::string gp = dir + "/g" + std::to_string(t) + ".json";
    write_json_file(gp, graph_to_json(g));
    std::string xi = rank == 1 ? "1" : "1,0";
    CliResult r = run_cmd(kBin + " analyze " + q(gp) + " -R --rxi --xi " + xi + " --json");
    REQUIRE(r.exit_code == 0);
    CohomologyClass cls = parse_class(xi, rank);
    Json expect;
    expect["R"] = node_set_to_json(g, chain_recurrent_set(g));
    expect["R_xi"] = node_set_to_json(g, r_xi_set(g, cls));
    CHECK(r.out == dump_json(expect));
  }
}

TEST_CASE("solve round-trips a certificate through verify") {
  LoopFixture fx;
  std::string cert = fx.dir + "/cert.json";
  CliResult r = run_cmd(kBin + " solve " + q(fx.graph) + " --xi -1,0 --z " + q(fx.z) + " --out " +
                        q(cert));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("lyapunov slack=") == 0);
  // the file is byte-identical to the library's serialization
  IsolatedInvariantSet ziso = find_isolating_block(fx.g, fx.g.set_of_ids({0}), 1);
  CohomologyClass xi{Rat(-1), Rat(0)};
  SolveOutcome out = solve(fx.g, ziso, xi);
  REQUIRE(is_lyapunov(out));
  CHECK(testutil::read_text(cert) == dump_json(certificate_to_json(fx.g, xi, out)));
  CliResult v = run_cmd(kBin + " verify " + q(fx.graph) + " " + q(cert) + " --z " + q(fx.z));
  CHECK(v.exit_code == 0);
  CHECK(v.out == "ok\n");
  // corrupting one potential value must fail verification naming an edge
  Json broken = load_json_file(cert);
  broken["f"]["1"] = "1000000";
  write_json_file(fx.dir + "/broken.json", broken);
  CliResult b = run_cmd(kBin + " verify " + q(fx.graph) + " " + q(fx.dir + "/broken.json") +
                        " --z " + q(fx.z));
  CHECK(b.exit_code == 1);
  CHECK(b.out.find("violation") != std::string::npos);
  CHECK(b.out.find("edge") != std::string::npos);
}

TEST_CASE("solve reports obstructions that verify independently") {
  LoopFixture fx;
  std::string cert = fx.dir + "/obst.json";
  CliResult r = run_cmd(kBin + " solve " + q(fx.graph) + " --xi 1,0 --z " + q(fx.z) + " --out " +
                        q(cert));
  CHECK(r.exit_code == 10);
  CHECK(r.out.find("obstruction value=") == 0);
  CliResult v = run_cmd(kBin + " verify " + q(fx.graph) + " " + q(cert) + " --z " + q(fx.z));
  CHECK(v.exit_code == 0);
  // a tampered value is caught against the recomputed pairing
  Json broken = load_json_file(cert);
  broken["value"] = "-5";
  write_json_file(fx.dir + "/bad_value.json", broken);
  CliResult b = run_cmd(kBin + " verify " + q(fx.graph) + " " + q(fx.dir + "/bad_value.json") +
                        " --z " + q(fx.z));
  CHECK(b.exit_code == 1);
  CHECK(b.out.find("recomputed") != std::string::npos);
}

TEST_CASE("cut emits the level blocks of an integral certificate") {
  std::string dir = fresh_dir("cli_cut");
  FlowGraph g = testutil::make_graph(1, {0, 1, 2}, {{0, 1, {-1}}, {1, 2, {0}}, {2, 0, {0}}});
  write_json_file(dir + "/g.json", graph_to_json(g));
  CliResult s = run_cmd(kBin + " solve " + q(dir + "/g.json") + " --xi 1 --out " +
                        q(dir + "/cert.json"));
  REQUIRE(s.exit_code == 0);
  CliResult c = run_cmd(kBin + " cut " + q(dir + "/g.json") + " " + q(dir + "/cert.json"));
  CHECK(c.exit_code == 0);
  Json cuts = Json::parse(c.out);
  REQUIRE(cuts.at("cuts").size() == 1);
  CHECK(cuts.at("cuts")[0].at("z").at("nodes").empty());
  CHECK(!cuts.at("cuts")[0].at("cut_edges").empty());
  // the same command is byte-deterministic
  CliResult again = run_cmd(kBin + " cut " + q(dir + "/g.json") + " " + q(dir + "/cert.json"));
  CHECK(again.out == c.out);
  // a fractional class solves but cannot be cut
  CliResult s2 = run_cmd(kBin + " solve " + q(dir + "/g.json") + " --xi 1/2 --out " +
                         q(dir + "/half.json"));
  CHECK(s2.exit_code == 0);
  CliResult c2 = run_cmd(kBin + " cut " + q(dir + "/g.json") + " " + q(dir + "/half.json"));
  CHECK(c2.exit_code == 13);
}

TEST_CASE("export renders DOT and CSV with overlays") {
  std::string dir = fresh_dir("cli_export");
  FlowGraph g = testutil::make_graph_q(1, {0, 1, 2},
                                       {{0, 1, {Rat(0)}}, {1, 2, {Rat(1, 2)}}});
  write_json_file(dir + "/g.json", graph_to_json(g));
  write_json_file(dir + "/mark.json", Json{{"nodes", Json::array({1})}});
  CliResult dot = run_cmd(kBin + " export " + q(dir + "/g.json") + " --dot --mark " +
                          q(dir + "/mark.json"));
  CHECK(dot.exit_code == 0);
  size_t arrows = 0, reds = 0;
  for (size_t p = dot.out.find(" -> "); p != std::string::npos; p = dot.out.find(" -> ", p + 1))
    ++arrows;
  for (size_t p = dot.out.find("color=red"); p != std::string::npos;
       p = dot.out.find("color=red", p + 1))
    ++reds;
  CHECK(arrows == 2);
  CHECK(reds == 1);
  CHECK(dot.out.find("1 [color=red];") != std::string::npos);
  CHECK(dot.out.find("(1/2)") != std::string::npos);
  CliResult csv = run_cmd(kBin + " export " + q(dir + "/g.json") + " --csv");
  CHECK(csv.exit_code == 0);
  CHECK(csv.out == "0,1,0\n1,2,1/2\n");
  // heat column from an obstruction certificate on a zero 2-cycle
  FlowGraph cyc = testutil::make_graph(1, {0, 1}, {{0, 1, {0}}, {1, 0, {0}}});
  write_json_file(dir + "/cyc.json", graph_to_json(cyc));
  CliResult s = run_cmd(kBin + " solve " + q(dir + "/cyc.json") + " --xi 1 --out " +
                        q(dir + "/obst.json"));
  REQUIRE(s.exit_code == 10);
  CliResult heat = run_cmd(kBin + " export " + q(dir + "/cyc.json") + " --csv --heat " +
                           q(dir + "/obst.json"));
  CHECK(heat.exit_code == 0);
  CHECK(heat.out == "0,1,0,1\n1,0,0,1\n");
}

TEST_CASE("failure modes map to distinct exit codes") {
  std::string dir = fresh_dir("cli_err");
  LoopFixture fx;
  // 2: malformed inputs of several shapes
  write_json_file(dir + "/empty.json", Json::object());
  CHECK(run_cmd(kBin + " verify " + q(fx.graph) + " " + q(dir + "/empty.json")).exit_code == 2);
  CHECK(run_cmd(kBin + " analyze " + q(fx.graph) + " --rxi").exit_code == 2);
  CHECK(run_cmd(kBin + " analyze " + q(dir + "/missing.json")).exit_code == 2);
  CHECK(run_cmd(kBin + " export " + q(fx.graph) + " --dot --csv").exit_code == 2);
  CHECK(run_cmd(kBin + " export " + q(fx.graph)).exit_code == 2);
  Json badcfg;
  badcfg["field"] = Json{{"kind", "gradient"}};
  write_json_file(dir + "/badcfg.json", badcfg);
  CHECK(run_cmd(kBin + " discretize --config " + q(dir + "/badcfg.json") + " --out " +
                q(dir + "/x.json"))
            .exit_code == 2);
  // 2: an obstruction certificate cannot be cut
  std::string obst = dir + "/obst.json";
  REQUIRE(run_cmd(kBin + " solve " + q(fx.graph) + " --xi 1,0 --z " + q(fx.z) + " --out " +
                  q(obst))
              .exit_code == 10);
  CHECK(run_cmd(kBin + " cut " + q(fx.graph) + " " + q(obst)).exit_code == 2);
  // 3: integrator step too large
  Json bigstep;
  bigstep["field"] = Json{{"kind", "linear"}};
  bigstep["grid"] = Json{{"resolution", 8}, {"h", 0.6}};
  write_json_file(dir + "/bigstep.json", bigstep);
  CHECK(run_cmd(kBin + " discretize --config " + q(dir + "/bigstep.json") + " --out " +
                q(dir + "/y.json"))
            .exit_code == 3);
  // 11: the class does not vanish on the zero set
  FlowGraph twisted = testutil::make_graph(1, {0, 1}, {{0, 1, {1}}, {1, 0, {0}}});
  write_json_file(dir + "/twisted.json", graph_to_json(twisted));
  write_json_file(dir + "/z01.json", Json{{"nodes", Json::array({0, 1})}});
  CHECK(run_cmd(kBin + " solve " + q(dir + "/twisted.json") + " --xi 1 --z " +
                q(dir + "/z01.json"))
            .exit_code == 11);
  // 12: the grown block is not isolating
  FlowGraph crowd = testutil::make_graph(
      1, {0, 1, 2}, {{0, 0, {0}}, {0, 1, {0}}, {1, 2, {0}}, {2, 1, {0}}, {2, 0, {0}}});
  write_json_file(dir + "/crowd.json", graph_to_json(crowd));
  write_json_file(dir + "/z0.json", Json{{"nodes", Json::array({0})}});
  CHECK(run_cmd(kBin + " solve " + q(dir + "/crowd.json") + " --xi 1 --z " + q(dir + "/z0.json"))
            .exit_code == 12);
}

TEST_CASE("reference outputs stay byte-stable") {
  LoopFixture fx;
  // analysis of the two-loop fixture
  CliResult analyze = run_cmd(kBin + " analyze " + q(fx.graph) + " -R --rxi --xi -1,0 --json");
  REQUIRE(analyze.exit_code == 0);
  golden_check("loop_analyze.json", analyze.out);
  // both dichotomy branches
  std::string lyap = fx.dir + "/lyap.json";
  std::string obst = fx.dir + "/obst.json";
  REQUIRE(run_cmd(kBin + " solve " + q(fx.graph) + " --xi -1,0 --z " + q(fx.z) + " --out " +
                  q(lyap))
              .exit_code == 0);
  REQUIRE(run_cmd(kBin + " solve " + q(fx.graph) + " --xi 1,0 --z " + q(fx.z) + " --out " +
                  q(obst))
              .exit_code == 10);
  golden_check("loop_certificate.json", testutil::read_text(lyap));
  golden_check("loop_obstruction.json", testutil::read_text(obst));
  // level cuts of the certificate
  CliResult cuts = run_cmd(kBin + " cut " + q(fx.graph) + " " + q(lyap));
  REQUIRE(cuts.exit_code == 0);
  golden_check("loop_cuts.json", cuts.out);
  // DOT rendering with the zero set marked
  CliResult dot = run_cmd(kBin + " export " + q(fx.graph) + " --dot --mark " + q(fx.z));
  REQUIRE(dot.exit_code == 0);
  golden_check("loop_export.dot", dot.out);
  // identical reruns — the pipeline is deterministic end to end
  CliResult again = run_cmd(kBin + " analyze " + q(fx.graph) + " -R --rxi --xi -1,0 --json");
  CHECK(again.out == analyze.out);
  std::string lyap2 = fx.dir + "/lyap2.json";
  REQUIRE(run_cmd(kBin + " solve " + q(fx.graph) + " --xi -1,0 --z " + q(fx.z) + " --out " +
                  q(lyap2))
              .exit_code == 0);
  CHECK(testutil::read_text(lyap2) == testutil::read_text(lyap));
}
