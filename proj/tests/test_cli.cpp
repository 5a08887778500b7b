#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "hankelcos/report.hpp"

namespace {

struct RunResult {
    int status = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args, const std::string& env = "") {
    static int counter = 0;
    const std::string out_path = "cli_out_" + std::to_string(counter) + ".txt";
    const std::string err_path = "cli_err_" + std::to_string(counter) + ".txt";
    ++counter;
    const std::string cmd = env + " " + std::string(HANKELCOS_CLI_PATH) + " " + args + " >" +
                            out_path + " 2>" + err_path;
    const int rc = std::system(cmd.c_str());
    RunResult r;
    r.status = WEXITSTATUS(rc);
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return r;
}

} // namespace

TEST_CASE("eval with all methods agrees and exits 0") {
    const RunResult r = run_cli("eval --k 1,-0.1 --w 0.5 --method all");
    CHECK(r.status == 0);
    const auto rep = hankelcos::report::parse_csv(r.out);
    REQUIRE(rep.records.size() == 3);
    for (const auto& rec : rep.records) {
        CHECK(rec.pass);
        CHECK(rec.gap < 1e-6);
    }
    // methods in deterministic order
    CHECK(rep.records[0].method == "closed");
    CHECK(rep.records[1].method == "quad");
    CHECK(rep.records[2].method == "green");
}

TEST_CASE("invalid wavenumber is a configuration error with a parsable reason") {
    const RunResult r = run_cli("eval --k -1,0 --w 0");
    CHECK(r.status == 2);
    CHECK(r.err.find("error: ") == 0);
    CHECK(r.err.find("Re k must be positive") != std::string::npos);
}

TEST_CASE("unreachable output path exits 3") {
    const RunResult r = run_cli("eval --k 1,-0.1 --w 0.5 -o /nonexistent-dir-xyz/x.csv");
    CHECK(r.status == 3);
    CHECK(r.err.find("error: ") == 0);
}

TEST_CASE("impossible tolerance exits 1 (verification failure)") {
    const RunResult r = run_cli("eval --k 1,-0.1 --w 0.5 --tol 1e-18");
    CHECK(r.status == 1);
}

TEST_CASE("unknown flags exit 2") {
    const RunResult r = run_cli("eval --nonsense 1");
    CHECK(r.status == 2);
}

TEST_CASE("help exits 0") {
    const RunResult r = run_cli("--help");
    CHECK(r.status == 0);
    CHECK(r.out.find("eval") != std::string::npos);
}

TEST_CASE("missing subcommand exits 2") {
    const RunResult r = run_cli("");
    CHECK(r.status == 2);
}

TEST_CASE("verify over a grid passes and is deterministic") {
    const std::string args = "verify --k 1,-0.2 --w-steps 9 --seed 7 --format json";
    const RunResult a = run_cli(args);
    const RunResult b = run_cli(args);
    CHECK(a.status == 0);
    CHECK(a.out == b.out); // byte-identical reports
    const auto j = nlohmann::json::parse(a.out);
    CHECK(j["summary"]["fail_count"] == 0);
    CHECK(j["summary"]["max_gap"].get<double>() < 1e-6);
}

TEST_CASE("random verification points are reproducible under the seed") {
    const std::string args = "verify --k 1,-0.3 --random 5 --seed 42";
    const RunResult a = run_cli(args);
    const RunResult b = run_cli(args);
    const RunResult c = run_cli("verify --k 1,-0.3 --random 5 --seed 43");
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    CHECK(a.out != c.out);
}

TEST_CASE("thread count does not change the report bytes") {
    const std::string args = "verify --k 1,-0.2 --w-steps 7";
    const RunResult one = run_cli(args, "HC_THREADS=1");
    const RunResult four = run_cli(args, "HC_THREADS=4");
    CHECK(one.status == 0);
    CHECK(one.out == four.out);
}

TEST_CASE("sweep emits plot-ready records without gating") {
    const RunResult r = run_cli("sweep --k 1,-0.2 --w-to 2.0 --w-steps 5 --method quad");
    CHECK(r.status == 0);
    const auto rep = hankelcos::report::parse_csv(r.out);
    CHECK(rep.records.size() >= 4);
    for (const auto& rec : rep.records)
        CHECK(rec.method == "quad");
}

TEST_CASE("fit-cd reports the resolved constants") {
    const RunResult r = run_cli("fit-cd --pairs 0.5:2,1:3 --format json");
    CHECK(r.status == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["fits"].size() == 2);
    CHECK(std::abs(j["fits"][0]["C"].get<double>() + 0.5772156649015329) < 1e-6);
    CHECK(std::abs(j["fits"][0]["D"].get<double>() - 1.5707963267948966) < 1e-6);
    CHECK(j["max_dev_C"].get<double>() < 1e-6);
    CHECK(j["max_dev_D"].get<double>() < 1e-6);
}

TEST_CASE("fit-ab recovers the asymptotic constants") {
    const RunResult r = run_cli("fit-ab --k 1,-0.1 --w-samples 50,100,200,400 --format json");
    CHECK(r.status == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(std::abs(j["A_im"].get<double>() - 1.0) < 1e-3);
    CHECK(std::abs(j["A_re"].get<double>()) < 1e-3);
    CHECK(std::abs(j["B_re"].get<double>()) < 1e-3);
    CHECK(std::abs(j["B_im"].get<double>()) < 1e-3);
}

TEST_CASE("hankel subcommand prints the cylinder functions") {
    const RunResult r = run_cli("hankel --z 1,0 --format json");
    CHECK(r.status == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(std::abs(j["j0_re"].get<double>() - 0.76519768655796655) < 1e-12);
    CHECK(std::abs(j["y0_re"].get<double>() - 0.08825696421567696) < 1e-12);
    CHECK(std::abs(j["h2_im"].get<double>() + 0.08825696421567696) < 1e-12);
}
