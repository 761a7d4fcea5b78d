// End-to-end checks of the installed CLI binary (path injected at compile
// time). Each scenario shells out exactly as a user would.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "ergo/io.hpp"

using namespace ergo;
namespace fs = std::filesystem;

namespace {

fs::path scratch() {
    const fs::path dir = fs::temp_directory_path() / "ergo_cli_tests";
    fs::create_directories(dir);
    return dir;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(ERGO_CLI_PATH) + " " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path write_three_cycle() {
    Json doc;
    doc["type"] = "finite";
    doc["map"] = {1, 2, 0};
    doc["cycle_weights"] = {"1/3"};
    doc["f"] = {"3", "-1", "-1"};
    const fs::path path = scratch() / "three_cycle.json";
    save_json(path.string(), doc);
    return path;
}

fs::path write_rotation() {
    Json doc;
    doc["type"] = "rotation";
    doc["alpha"] = "golden";
    doc["x0"] = 0.0;
    const fs::path path = scratch() / "rotation.json";
    save_json(path.string(), doc);
    return path;
}

}  // namespace

TEST_CASE("decompose then verify-cert accepts its own certificate") {
    const fs::path sys = write_three_cycle();
    const fs::path cert = scratch() / "cert.json";
    const fs::path report = scratch() / "verify_report.json";
    REQUIRE(run_cli("decompose --system " + sys.string() + " --x 0 --N 3 --m 7 --emit " +
                    cert.string()) == 0);
    CHECK(run_cli("verify-cert --cert " + cert.string() + " --system " + sys.string() +
                  " --out " + report.string()) == 0);
    const Json doc = load_json(report.string());
    CHECK(doc.at("ok").get<bool>());
    CHECK(doc.at("failures").empty());
}

TEST_CASE("verify-cert rejects a hand-corrupted certificate naming clause a") {
    const fs::path sys = write_three_cycle();
    const fs::path cert = scratch() / "cert_tampered.json";
    REQUIRE(run_cli("decompose --system " + sys.string() + " --x 0 --N 3 --m 7 --emit " +
                    cert.string()) == 0);
    Json doc = load_json(cert.string());
    doc["blocks"][1] = {1, 2};  // shorten (1,3): raw sum over the block drops to -2
    save_json(cert.string(), doc);
    const fs::path report = scratch() / "tampered_report.json";
    CHECK(run_cli("verify-cert --cert " + cert.string() + " --system " + sys.string() +
                  " --out " + report.string()) == 1);
    const Json out = load_json(report.string());
    CHECK_FALSE(out.at("ok").get<bool>());
    bool names_a = false;
    for (const auto& failure : out.at("failures"))
        if (failure.at("clause") == "a") names_a = true;
    CHECK(names_a);
}

TEST_CASE("verify-maximal sweep exits clean and reports stabilization") {
    const fs::path sys = write_three_cycle();
    const fs::path report = scratch() / "sweep.json";
    CHECK(run_cli("verify-maximal --system " + sys.string() +
                  " --lambda const:0 --n-range 1..6 --out " + report.string()) == 0);
    const Json doc = load_json(report.string());
    CHECK(doc.at("stabilized").get<bool>());
    CHECK(doc.at("verdicts").size() == 6);
    CHECK(doc.at("verdicts")[2].at("integral") == "1/3");
}

TEST_CASE("birkhoff CSV lands with the versioned header") {
    const fs::path sys = write_three_cycle();
    const fs::path csv = scratch() / "birkhoff.csv";
    CHECK(run_cli("birkhoff --system " + sys.string() + " --x 0 --K 6 --out " + csv.string()) ==
          0);
    const std::string body = slurp(csv);
    CHECK(body.rfind("# ergo csv v1: birkhoff x=0\n", 0) == 0);
    CHECK(body.find("3,1/3,") != std::string::npos);
}

TEST_CASE("converge output is byte-identical across reruns") {
    const fs::path sys = write_rotation();
    const fs::path first = scratch() / "converge_1.csv";
    const fs::path second = scratch() / "converge_2.csv";
    const std::string args =
        "converge --system " + sys.string() + " --observable cos2pi --min-pow 4 --max-pow 12";
    CHECK(run_cli(args + " --out " + first.string()) == 0);
    CHECK(run_cli(args + " --out " + second.string()) == 0);
    CHECK(slurp(first) == slurp(second));
    CHECK(slurp(first).rfind("# ergo csv v1: converge limit=0\n", 0) == 0);
}

TEST_CASE("configuration errors exit with status 2") {
    const fs::path bad = scratch() / "bad_system.json";
    Json doc;
    doc["type"] = "finite";
    doc["map"] = {1, 0};
    doc["cycle_weights"] = {"1/2"};
    doc["f"] = {"1", "-1"};
    doc["surprise"] = true;
    save_json(bad.string(), doc);
    CHECK(run_cli("verify-maximal --system " + bad.string() + " --n-range 1..2") == 2);
    const fs::path sys = write_three_cycle();
    CHECK(run_cli("verify-maximal --system " + sys.string() + " --n-range 3..1") == 2);
}

TEST_CASE("corollary honestly fails when the sweep cannot reach the limit") {
    const fs::path sys = write_three_cycle();
    const fs::path report = scratch() / "corollary_short.json";
    CHECK(run_cli("corollary --system " + sys.string() + " --n-max 1 --out " +
                  report.string()) == 1);
    const Json doc = load_json(report.string());
    CHECK_FALSE(doc.at("limit_identity").get<bool>());
    const fs::path full = scratch() / "corollary_full.json";
    CHECK(run_cli("corollary --system " + sys.string() + " --n-max 8 --out " + full.string()) ==
          0);
    CHECK(load_json(full.string()).at("stabilized_at") == 2);
}

TEST_CASE("fuzz campaigns run clean from the command line") {
    CHECK(run_cli("fuzz --seeds 1..25 --n-max 8") == 0);
}
