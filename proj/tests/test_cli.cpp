#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

#ifndef CHEESE_MIS_BIN
#define CHEESE_MIS_BIN "cheese-mis"
#endif

struct RunResult {
    int exit_code;
    std::string stdout_text;
};

RunResult run(const std::string& args) {
    std::string out_file = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                           "/cheese_cli_out.txt";
    std::string cmd = std::string(CHEESE_MIS_BIN) + " " + args + " > " + out_file + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    std::ifstream in(out_file);
    std::stringstream ss;
    ss << in.rdbuf();
    return {WEXITSTATUS(rc), ss.str()};
}

json strip_timings(json j) {
    j.erase("timings");
    return j;
}

const char* kInstancePath = "/tmp/cheese_cli_inst.json";

}  // namespace

TEST_CASE("generate writes a loadable instance deterministically") {
    auto r1 = run("generate --rows 5 --cols 5 --objects 'rect:2x2:4;rect:1x1:3' --seed 4 --out " +
                  std::string(kInstancePath));
    REQUIRE(r1.exit_code == 0);
    std::ifstream in(kInstancePath);
    json j1;
    in >> j1;
    REQUIRE(j1.contains("n"));
    REQUIRE(j1.contains("edges"));
    REQUIRE(j1.contains("rotation"));
    REQUIRE(j1.contains("objects"));
    REQUIRE(j1.contains("metric_seed"));

    auto r2 = run(
        "generate --rows 5 --cols 5 --objects 'rect:2x2:4;rect:1x1:3' --seed 4 --out "
        "/tmp/cheese_cli_inst2.json");
    REQUIRE(r2.exit_code == 0);
    std::ifstream in2("/tmp/cheese_cli_inst2.json");
    json j2;
    in2 >> j2;
    REQUIRE(j1 == j2);
}

TEST_CASE("solve reports are byte-identical modulo timings") {
    auto a = run("solve --in " + std::string(kInstancePath) +
                 " --s-override 5 --seed 11 --exact --out -");
    auto b = run("solve --in " + std::string(kInstancePath) +
                 " --s-override 5 --seed 11 --exact --out -");
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    json ja = json::parse(a.stdout_text);
    json jb = json::parse(b.stdout_text);
    REQUIRE(strip_timings(ja).dump() == strip_timings(jb).dump());
    REQUIRE(ja.at("value").get<std::size_t>() >= 1);
    REQUIRE(ja.contains("solution"));
    REQUIRE(ja.contains("exact_opt"));
    REQUIRE(ja.contains("guarantee_exponent"));
    REQUIRE(ja.contains("mode"));
    REQUIRE(ja.contains("stats"));
    REQUIRE(ja.at("seed") == 11);
}

TEST_CASE("verify passes on a generated instance") {
    auto r = run("verify --in " + std::string(kInstancePath) + " --out -");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.stdout_text);
    REQUIRE(j.at("pass").get<bool>());
    REQUIRE(j.at("suites").size() >= 4);
}

TEST_CASE("verify-sampling emits frequencies and per-trial rows") {
    auto r = run("verify-sampling --in " + std::string(kInstancePath) +
                 " --trials 50 --s 3 --seed 2 --out -");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.stdout_text);
    REQUIRE(j.at("per_trial").size() == 50);
    REQUIRE(j.at("frequencies").contains("joint"));
    REQUIRE(j.at("sigma").contains("joint"));
}

TEST_CASE("usage errors exit with code 2") {
    auto r = run("solve");
    REQUIRE(r.exit_code == 2);
    auto r2 = run("frobnicate");
    REQUIRE(r2.exit_code == 2);
}

TEST_CASE("malformed input exits with code 1 and diagnostics") {
    {
        std::ofstream bad("/tmp/cheese_cli_bad.json");
        bad << "{ not json";
    }
    auto r = run("solve --in /tmp/cheese_cli_bad.json --out -");
    REQUIRE(r.exit_code == 1);
    // structurally broken instance
    {
        std::ofstream bad("/tmp/cheese_cli_bad2.json");
        bad << R"({"n":3,"edges":[[0,1,"1"]],"rotation":[[0],[0],[]],"metric_seed":0,)"
            << R"("objects":[{"id":0,"vertices":[0],"edges":[]}]})";
    }
    auto r2 = run("solve --in /tmp/cheese_cli_bad2.json --out -");
    REQUIRE(r2.exit_code == 1);
}

TEST_CASE("CHEESE_MIS_SEED env fallback seeds the solver") {
    std::string cmd = "CHEESE_MIS_SEED=77 " + std::string(CHEESE_MIS_BIN) + " solve --in " +
                      kInstancePath + " --s-override 4 --out - 2>/dev/null > /tmp/cheese_env.json";
    REQUIRE(std::system(cmd.c_str()) == 0);
    std::ifstream in("/tmp/cheese_env.json");
    json j;
    in >> j;
    REQUIRE(j.at("seed") == 77);
}

TEST_CASE("bench runs the desk suite") {
    auto r = run("bench --suite desk --seed 5 --threads 2 --out -");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.stdout_text);
    REQUIRE(j.at("results").size() >= 4);
    for (const auto& row : j.at("results")) {
        REQUIRE(row.contains("instance"));
        REQUIRE(row.contains("N"));
        REQUIRE(row.contains("n"));
        REQUIRE(row.contains("exact"));
        REQUIRE(row.contains("approx"));
        REQUIRE(row.contains("ratio"));
        REQUIRE(row.contains("time"));
        REQUIRE(row.at("approx").get<std::size_t>() <= row.at("exact").get<std::size_t>());
    }
}
