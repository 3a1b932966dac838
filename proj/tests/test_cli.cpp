#include "supra/cli.hpp"
#include "supra/error.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using supra::cli::dispatch;

namespace {

struct Workspace {
    fs::path dir;
    Workspace() {
        dir = fs::temp_directory_path() / "supra_cli_test";
        fs::create_directories(dir);
    }
    std::string write(const std::string& name, const std::string& text) const {
        const auto p = dir / name;
        std::ofstream(p) << text;
        return p.string();
    }
    std::string path(const std::string& name) const { return (dir / name).string(); }
};

std::string read(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run(std::vector<std::string> args) {
    args.insert(args.begin(), "supra");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    return dispatch(static_cast<int>(argv.size()), argv.data());
}

// Six layers, each a 4-node paw with a different centre.
const char* kPaws = "1 1 2\n1 2 1\n1 2 3\n1 3 2\n1 1 3\n1 3 1\n1 1 4\n1 4 1\n"
                    "2 2 3\n2 3 2\n2 3 4\n2 4 3\n2 2 4\n2 4 2\n2 2 1\n2 1 2\n"
                    "3 3 1\n3 1 3\n3 1 4\n3 4 1\n3 3 4\n3 4 3\n3 3 2\n3 2 3\n"
                    "4 4 2\n4 2 4\n4 2 1\n4 1 2\n4 4 1\n4 1 4\n4 4 3\n4 3 4\n"
                    "5 1 3\n5 3 1\n5 3 4\n5 4 3\n5 1 4\n5 4 1\n5 1 2\n5 2 1\n"
                    "6 2 4\n6 4 2\n6 4 1\n6 1 4\n6 2 1\n6 1 2\n6 2 3\n6 3 2\n";

} // namespace

TEST_CASE("interlayer specs") {
    CHECK(supra::cli::parse_interlayer_spec("chain", 3).values()(0, 1) == 1.0);
    CHECK(supra::cli::parse_interlayer_spec("alltoall", 2).values()(0, 0) == 1.0);
    CHECK(supra::cli::parse_interlayer_spec("alltoall-noself", 2).values()(0, 0) == 0.0);
    CHECK(supra::cli::parse_interlayer_spec("teleport:0.1", 3).values()(2, 0) == 0.1);
    const auto b = supra::cli::parse_interlayer_spec("blocks:sizes=2,2;intra=1;inter=0.01", 4).values();
    CHECK(b(1, 2) == 0.01);
    CHECK(b(0, 1) == 1.0);
    CHECK_THROWS_AS(supra::cli::parse_interlayer_spec("ring", 3), supra::InvalidArgument);
}

TEST_CASE("check and usage exit codes") {
    Workspace ws;
    const auto net = ws.write("paws.txt", kPaws);
    CHECK(run({"check", "--network", net, "--interlayer", "chain"}) == 0);
    CHECK(run({"check", "--network", net, "--interlayer", "teleport:0"}) == 2);
    CHECK(run({"centrality", "--network", net, "--interlayer", "chain", "--omega", "1", "--kind", "pagerank",
               "--sigma", "1.0", "--out", ws.path("x.csv")}) == 1);
    CHECK(run({"centrality", "--kind", "eigenvector", "--network", net, "--interlayer", "chain", "--omega", "1"}) == 1);
    CHECK(run({"centrality", "--kind", "eigenvector", "--network", ws.path("missing.txt"), "--interlayer", "chain", "--omega", "1", "--out",
               ws.path("x.csv")}) == 1);
    CHECK(run({"centrality", "--kind", "eigenvector", "--network", net, "--interlayer", "teleport:0", "--omega", "1", "--out",
               ws.path("x.csv")}) == 2);
    CHECK(run({"bogus"}) == 1);
}

TEST_CASE("centrality output is deterministic") {
    Workspace ws;
    const auto net = ws.write("paws.txt", kPaws);
    const auto a = ws.path("a.csv");
    const auto b = ws.path("b.csv");
    const auto summary = ws.path("s.json");
    REQUIRE(run({"centrality", "--kind", "eigenvector", "--network", net, "--interlayer", "chain", "--omega", "0.5", "--out", a, "--summary",
                 summary}) == 0);
    REQUIRE(run({"centrality", "--kind", "eigenvector", "--network", net, "--interlayer", "chain", "--omega", "0.5", "--out", b}) == 0);
    CHECK(read(a) == read(b));
    CHECK(read(a).rfind("node,1,2,3,4,5,6\n", 0) == 0);
    const auto j = nlohmann::json::parse(read(summary));
    CHECK(j["omega"] == 0.5);
    CHECK(j["preconditions"]["ok"] == true);
}

TEST_CASE("strong limit on a six-layer chain") {
    Workspace ws;
    const auto net = ws.write("paws.txt", kPaws);
    const auto out = ws.path("strong.json");
    REQUIRE(run({"limit", "--kind", "eigenvector", "--which", "strong", "--network", net, "--interlayer", "chain", "--out", out}) == 0);
    const auto j = nlohmann::json::parse(read(out));
    CHECK(j["omega"].is_null());
    CHECK(j["mu1"].get<double>() == doctest::Approx(2.0 * std::cos(std::numbers::pi / 7.0)).epsilon(1e-12));
    CHECK(j["closed_form_check"]["shape"] == "undirected_chain");

    const auto weak = ws.path("weak.json");
    REQUIRE(run({"limit", "--kind", "eigenvector", "--which", "weak", "--network", net, "--interlayer", "chain", "--out", weak}) == 0);
    CHECK(nlohmann::json::parse(read(weak))["omega"] == 0.0);
}

TEST_CASE("non-convergence exits with 3") {
    Workspace ws;
    const auto net = ws.write("paws.txt", kPaws);
    CHECK(run({"centrality", "--kind", "eigenvector", "--network", net, "--interlayer", "chain", "--omega", "1", "--max-iter", "1", "--out",
               ws.path("nc.csv")}) == 3);
}

TEST_CASE("sweep, correlate, trajectory and versatility write their files") {
    Workspace ws;
    const auto net = ws.write("paws.txt", kPaws);
    const auto sw = ws.path("sweep.csv");
    REQUIRE(run({"sweep", "--kind", "eigenvector", "--network", net, "--interlayer", "blocks:sizes=3,3;intra=1;inter=0.01", "--grid",
                 "-2,4,0.2", "--out", sw}) == 0);
    std::istringstream rows(read(sw));
    int n = 0;
    for (std::string l; std::getline(rows, l);) ++n;
    CHECK(n == 32);

    const auto corr = ws.path("corr.csv");
    REQUIRE(run({"correlate", "--kind", "eigenvector", "--network", net, "--interlayer", "alltoall", "--grid", "-1,1,1", "--out", corr}) == 0);
    CHECK(read(corr).rfind("omega,", 0) == 0);

    const auto traj = ws.path("traj.csv");
    REQUIRE(run({"trajectory", "--kind", "eigenvector", "--network", net, "--interlayer", "chain", "--grid", "-1,1,1", "--node", "1", "--out",
                 traj}) == 0);
    CHECK(run({"trajectory", "--kind", "eigenvector", "--network", net, "--interlayer", "chain", "--grid", "-1,1,1", "--node", "9", "--out",
               traj}) == 1);

    const auto vers = ws.path("vers.csv");
    REQUIRE(run({"versatility", "--network", net, "--interlayer", "alltoall", "--omega", "1", "--out", vers}) == 0);
    CHECK(read(vers).rfind("node,versatility\n", 0) == 0);
}
