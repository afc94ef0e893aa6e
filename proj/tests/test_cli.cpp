#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "wormcr/cli.hpp"
#include "wormcr/io.hpp"

using namespace wormcr;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "wormcr");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
    const auto p = std::filesystem::temp_directory_path() / ("wormcr_test_" + name);
    std::ofstream(p) << content;
    return p;
}

}  // namespace

TEST_CASE("rotation example passes") {
    const auto r = run_cli({"verify-map", "--family", "rotation", "--theta", "0.7", "--variant", "bounded",
                            "--samples", "10000", "--seed", "1"});
    CHECK(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["pass"] == true);
    CHECK(j["op"] == "verify_map_preserves");
    CHECK(j["samples"] == 10000);
    CHECK(j["failures"].empty());
}

TEST_CASE("h5 monodromy example fails with exit 1") {
    const auto r = run_cli({"monodromy", "--family", "h5", "--alpha", "0.2", "--beta", "0.5", "--gamma", "0.3", "--n", "1"});
    CHECK(r.code == 1);
    CHECK(Json::parse(r.out)["pass"] == false);
}

TEST_CASE("classify example") {
    const auto r = run_cli({"classify", "--z-re", "1", "--z-im", "0", "--w-re", "0", "--w-im", "0", "--mu", "2"});
    CHECK(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["region"] == "ExceptionalAnnulus");
    CHECK(j["levi"] == "LeviFlat");
    CHECK(j["point"].contains("zeta"));
    CHECK(j["point"].contains("z"));
}

TEST_CASE("points given as zeta or as (z, branch)") {
    const auto a = run_cli({"classify", "--zeta-re", "0", "--zeta-im", "6.283185307179586"});
    const auto b = run_cli({"classify", "--z-re", "1", "--branch", "1"});
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(Json::parse(a.out)["region"] == "CoreB");
    CHECK(Json::parse(a.out)["point"]["zeta"] == Json::parse(b.out)["point"]["zeta"]);
    CHECK(run_cli({"classify", "--zeta-re", "0", "--z-re", "1"}).code == 2);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"no-such-command"}).code == 2);
    CHECK(run_cli({"verify-map", "--no-such-flag"}).code == 2);
    CHECK(run_cli({"verify-map", "--family", "rotation", "--format", "xml"}).code == 2);

    const auto missing = run_cli({"verify-map"});
    CHECK(missing.code == 2);
    CHECK(missing.err.find("--family") != std::string::npos);

    const auto arity = run_cli({"verify-map", "--family", "h2", "--params", "1,0.1,0,0,0"});
    CHECK(arity.code == 2);
    CHECK(arity.err.find("h2 takes 6 parameters") != std::string::npos);

    const auto side = run_cli({"verify-map", "--family", "h3", "--params", "1,0,0"});
    CHECK(side.code == 2);
    CHECK(side.err.find("nu != 0") != std::string::npos);

    const auto off = run_cli({"levi", "--zeta-re", "0", "--w-re", "1"});
    CHECK(off.code == 2);
    CHECK(off.err.find("not on the boundary") != std::string::npos);

    CHECK(run_cli({"sample", "--region", "caps", "--variant", "unbounded"}).code == 2);
    CHECK(run_cli({"rank", "--format", "csv"}).code == 2);
}

TEST_CASE("help exits 0") {
    const auto r = run_cli({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("verify-map") != std::string::npos);
}

TEST_CASE("identical invocations give byte-identical reports") {
    const std::vector<std::string> args = {"verify-map", "--family", "h4", "--params", "1.05,0.02", "--samples", "500",
                                           "--seed", "7", "--tol", "1e-16"};
    const auto a = run_cli(args);
    auto threaded = args;
    threaded.insert(threaded.end(), {"--threads", "3"});
    const auto b = run_cli(args);
    const auto c = run_cli(threaded);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    CHECK(a.code == 1);
}

TEST_CASE("config file with flag overrides") {
    const auto cfg = temp_file("cfg.json", R"({
  "worm": {"variant": "unbounded"},
  "sampling": {"count": 123, "seed": 5}
})");
    const auto a = run_cli({"verify-map", "--config", cfg.string(), "--family", "h5", "--alpha", "0.1", "--beta",
                            "0.2", "--gamma", "0.1"});
    CHECK(a.code == 0);
    const Json ja = Json::parse(a.out);
    CHECK(ja["samples"] == 123);
    CHECK(ja["seed"] == 5);

    const auto b = run_cli({"verify-map", "--config", cfg.string(), "--samples", "50", "--family", "rotation",
                            "--theta", "0.2"});
    CHECK(Json::parse(b.out)["samples"] == 50);
    std::filesystem::remove(cfg);
}

TEST_CASE("malformed config names the line") {
    const auto bad = temp_file("bad.json", "{\n  \"worm\": {\n    \"mu\": -1\n  }\n}\n");
    const auto r = run_cli({"rank", "--config", bad.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("line 3") != std::string::npos);

    const auto broken = temp_file("broken.json", "{\n  \"sampling\": {\n    \"count\": 10,\n  }\n");
    const auto s = run_cli({"rank", "--config", broken.string()});
    CHECK(s.code == 2);
    CHECK(s.err.find("line") != std::string::npos);
    std::filesystem::remove(bad);
    std::filesystem::remove(broken);
    CHECK(run_cli({"rank", "--config", "/nonexistent/wormcr.json"}).code == 2);
}

TEST_CASE("config parse errors") {
    auto line_of = [](const std::string& text) {
        try {
            parse_run_config(text);
        } catch (const ConfigError& e) {
            return e.line();
        }
        return -1;
    };
    CHECK(line_of("{\"worm\": {\"variant\": \"round\"}}") == 1);
    CHECK(line_of("{\n\"extra\": 1}") == 2);
    CHECK(line_of("{\n\n\"worm\": {\"colour\": 1}}") == 3);
    CHECK(line_of("{\"sampling\":\n {\"count\": 0}}") == 2);
    CHECK(line_of("{\"sampling\": {\"seed\": -3}}") == 1);
    CHECK(line_of("{\"chart\": {\"restrict_to_germ_chart\": 1}}") == 1);
    CHECK(line_of("{\"output\": {\"format\": \"xml\"}}") == 1);
    CHECK(line_of("{\"worm\": {\"mu\": 2, \"a\": 1}}") == 1);
    CHECK(line_of("[1, 2]") == 1);
    CHECK(line_of("{}") == -1);
}

TEST_CASE("config round trip") {
    RunConfig a;
    RunConfig b;
    b.worm.variant = Variant::Unbounded;
    b.worm.mu = 1.5;
    b.worm.c = 7.0;
    b.worm.a = 4.0;
    b.worm.residual_tol = 1e-9;
    b.sampling = {77, 123456789012345ULL};
    b.output = {"csv", "/tmp/x.csv"};
    b.chart = {1e-5, 0.5, false};
    for (const RunConfig& c : {a, b}) {
        const RunConfig parsed = parse_run_config(serialize_run_config(c));
        CHECK(parsed == c);
        CHECK(serialize_run_config(parsed) == serialize_run_config(c));
    }
}

TEST_CASE("map family JSON") {
    const MapFamily f = MapFamily::h2(1.0, 0.1, 0.2, 0.0, 0.0, 0.0, Formula::Printed);
    const MapFamily g = map_family_from_json(to_json(f));
    CHECK(g.tag() == f.tag());
    CHECK(g.params() == f.params());
    CHECK(g.formula() == Formula::Printed);
    CHECK_THROWS_AS(map_family_from_json(Json::parse(R"({"tag": "h9"})")), PreconditionError);
    CHECK_THROWS_AS(map_family_from_json(Json::parse(R"({"tag": "h4", "params": [1, "x"]})")), PreconditionError);

    const auto r = run_cli({"verify-map", "--family-json", R"({"tag": "rotation", "params": [0.5]})", "--samples", "100"});
    CHECK(r.code == 0);
}

TEST_CASE("output path and CSV") {
    const auto path = std::filesystem::temp_directory_path() / "wormcr_test_points.csv";
    const auto r = run_cli({"sample", "--region", "core", "--samples", "5", "--format", "csv", "--out", path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "re_zeta,im_zeta,re_w,im_w,x,theta,rho_residual,levi_normalized,region");
    std::filesystem::remove(path);
}

TEST_CASE("subcommand results") {
    CHECK(run_cli({"verify-map", "--family", "perturbed", "--theta", "0.1", "--lambda", "1.01"}).code == 1);
    CHECK(run_cli({"verify-map", "--family", "rotation", "--theta", "0.3", "--compose", "0.4", "--invert"}).code == 0);
    CHECK(run_cli({"verify-map", "--family", "h2", "--params", "1.1,0.1,0.05,0.02,0.03,0.01", "--audit",
                   "--samples", "200"}).code == 0);
    CHECK(run_cli({"verify-map", "--exclusion-alphas", "0.5,-0.5,1,-1"}).code == 0);
    CHECK(run_cli({"verify-eq1", "--family", "h4", "--params", "1.05,0.02"}).code == 0);
    CHECK(run_cli({"verify-eq1", "--family", "rotation", "--theta", "0.4", "--system", "--samples", "200"}).code == 0);
    CHECK(run_cli({"verify-isotropy", "--family", "identity", "--mode", "literal"}).code == 1);
    CHECK(run_cli({"verify-isotropy", "--family", "h3", "--params", "1,0.1,0"}).code == 0);
    CHECK(run_cli({"monodromy", "--family", "h5", "--gamma", "0", "--alpha", "0.2", "--n", "1,2,3,4,5"}).code == 0);
    CHECK(run_cli({"segre", "--zeta-re", "0.05", "--xi-re", "0.03"}).code == 0);
    CHECK(run_cli({"segre", "--sweep"}).code == 0);
    CHECK(run_cli({"segre", "--desing-u", "0.01,0.001,0.0001"}).code == 0);
    CHECK(run_cli({"sphericity", "--sweep"}).code == 0);
    CHECK(run_cli({"sphericity", "--sweep", "--model", "re"}).code == 1);
    CHECK(run_cli({"sphericity", "--zeta-re", "1.5707963267948966", "--w-re", "-1", "--w-im", "1"}).code == 0);
    CHECK(run_cli({"connectivity", "--region", "caps", "--samples", "1000", "--expect", "2"}).code == 0);
    CHECK(run_cli({"connectivity", "--region", "caps", "--samples", "1000", "--expect", "1"}).code == 1);
    CHECK(run_cli({"levi", "--region", "annulus", "--samples", "100"}).code == 0);

    const Json seg = Json::parse(run_cli({"segre", "--zeta-re", "0.05", "--xi-re", "0.03"}).out);
    CHECK(seg["rank"] == 2);
    CHECK(seg["complexified_residual"].get<double>() < 1e-12);
}

TEST_CASE("dispatch table covers every module operation") {
    const std::set<std::string> operations = {
        "power_ia", "monodromy_shift", "project", "eta", "rho", "rho_complexified", "sample_boundary", "levi_form",
        "classify", "connectivity_probe", "eval", "sphericity_map", "heisenberg_residual", "jet_at_base",
        "compose_rotation", "invert_rotation", "segre1", "segre2", "segre2_rank", "desing_forward", "desing_phi",
        "verify_map_preserves", "verify_eq1_complexified", "verify_tangency_system", "check_isotropy_conditions",
        "monodromy_test", "identity_component_rank", "bounded_rotation_only_evidence"};
    std::set<std::string> reached;
    for (const auto& e : dispatch_table()) {
        reached.insert(e.operations.begin(), e.operations.end());
    }
    for (const auto& op : operations) {
        CHECK_MESSAGE(reached.count(op) == 1, "unreachable: " << op);
    }
    const std::set<std::string> subcommands = {"classify", "sample", "levi", "verify-map", "verify-eq1",
                                               "verify-isotropy", "monodromy", "segre", "sphericity", "rank",
                                               "connectivity", "report"};
    std::set<std::string> listed;
    for (const auto& e : dispatch_table()) {
        listed.insert(e.subcommand);
    }
    CHECK(listed == subcommands);
}

TEST_CASE("every subcommand runs") {
    const std::map<std::string, std::vector<std::string>> minimal = {
        {"classify", {}},
        {"sample", {"--samples", "3"}},
        {"levi", {}},
        {"verify-map", {"--family", "identity", "--samples", "50"}},
        {"verify-eq1", {"--family", "identity", "--samples", "50"}},
        {"verify-isotropy", {"--family", "identity"}},
        {"monodromy", {"--family", "rotation", "--theta", "0.1"}},
        {"segre", {"--zeta-re", "0.1"}},
        {"sphericity", {}},
        {"rank", {}},
        {"connectivity", {"--samples", "200"}},
        {"report", {"--samples", "500"}},
    };
    for (const auto& e : dispatch_table()) {
        std::vector<std::string> args{e.subcommand};
        const auto& extra = minimal.at(e.subcommand);
        args.insert(args.end(), extra.begin(), extra.end());
        const auto r = run_cli(args);
        CHECK_MESSAGE(r.code == 0, e.subcommand << ": " << r.err);
    }
}
