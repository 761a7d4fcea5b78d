#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "ergo/io.hpp"
#include "ergo/numeric.hpp"

using namespace ergo;
namespace fs = std::filesystem;

namespace {

fs::path scratch() {
    const fs::path dir = fs::temp_directory_path() / "ergo_io_tests";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

FiniteCase sample_case() {
    FiniteCase c;
    c.system = make_finite_system({1, 2, 0, 3}, {make_ratio(1, 4), make_ratio(1, 4)});
    c.f.values = {Rational(3), Rational(-1), Rational(-1), make_ratio(7, 2)};
    c.lambda = make_invariant_function(c.system, {make_ratio(1, 2), Rational(-3)});
    return c;
}

}  // namespace

TEST_CASE("finite system JSON round trip") {
    const FiniteCase original = sample_case();
    const Json doc = finite_case_json(original);
    const LoadedSystem loaded = system_from_json(doc, "roundtrip");
    REQUIRE(std::holds_alternative<FiniteCase>(loaded));
    const FiniteCase& back = std::get<FiniteCase>(loaded);
    CHECK(back.system.map == original.system.map);
    CHECK(back.system.weights == original.system.weights);
    CHECK(back.f.values == original.f.values);
    CHECK(back.lambda.per_cycle == original.lambda.per_cycle);
}

TEST_CASE("lambda defaults to zero on every cycle") {
    Json doc;
    doc["type"] = "finite";
    doc["map"] = {1, 0};
    doc["cycle_weights"] = {"1/2"};
    doc["f"] = {"5", "-1"};
    const FiniteCase c = std::get<FiniteCase>(system_from_json(doc, "test"));
    REQUIRE(c.lambda.per_cycle.size() == 1);
    CHECK(c.lambda.per_cycle[0] == 0);
}

TEST_CASE("unknown fields are rejected by name") {
    Json doc = finite_case_json(sample_case());
    doc["seeds"] = 7;
    CHECK_THROWS_WITH_AS(system_from_json(doc, "test"), "test: unknown field 'seeds'",
                         ConfigParse);
}

TEST_CASE("context annotations are tolerated and ignored") {
    const fs::path path = scratch() / "repro.json";
    Json extra;
    extra["seed"] = 99;
    extra["failure"] = "demo";
    save_finite_case(path.string(), sample_case(), extra);
    const Json doc = load_json(path.string());
    CHECK(doc.at("context").at("seed") == 99);
    const FiniteCase c = std::get<FiniteCase>(load_system_file(path.string()));
    CHECK(c.system.map == sample_case().system.map);
}

TEST_CASE("malformed rationals are configuration errors") {
    Json doc = finite_case_json(sample_case());
    doc["f"][0] = "1.5";
    CHECK_THROWS_AS(system_from_json(doc, "test"), ConfigParse);
    doc["f"][0] = 3;  // numbers must be quoted
    CHECK_THROWS_AS(system_from_json(doc, "test"), ConfigParse);
}

TEST_CASE("sampled system descriptions round trip") {
    Json rot;
    rot["type"] = "rotation";
    rot["alpha"] = "golden";
    rot["x0"] = 0.25;
    const SampledCase r = std::get<SampledCase>(system_from_json(rot, "test"));
    CHECK(std::get<Rotation>(r.system.kind).alpha_spec == "golden");
    CHECK(r.system.x0 == 0.25);

    Json bern;
    bern["type"] = "bernoulli_shift";
    bern["p"] = 0.25;
    bern["seed"] = 42;
    const SampledCase b = std::get<SampledCase>(system_from_json(bern, "test"));
    CHECK(std::get<BernoulliShift>(b.system.kind).p == 0.25);
    CHECK(b.system.seed == 42);

    Json markov;
    markov["type"] = "markov_shift";
    markov["transition"] = {{0.5, 0.5}, {0.25, 0.75}};
    markov["stationary"] = {1.0 / 3.0, 2.0 / 3.0};
    markov["seed"] = 7;
    const SampledCase m = std::get<SampledCase>(system_from_json(markov, "test"));
    CHECK(std::get<MarkovShift>(m.system.kind).stationary.size() == 2);
}

TEST_CASE("sampled descriptions reject omissions and strays") {
    Json doc;
    doc["type"] = "bernoulli_shift";
    doc["p"] = 0.5;
    CHECK_THROWS_AS(system_from_json(doc, "test"), ConfigParse);  // no seed
    doc["seed"] = 1;
    doc["alpha"] = "golden";
    CHECK_THROWS_AS(system_from_json(doc, "test"), ConfigParse);  // stray field
    Json unknown;
    unknown["type"] = "baker_map";
    CHECK_THROWS_AS(system_from_json(unknown, "test"), ConfigParse);
}

TEST_CASE("finite certificate files round trip exactly") {
    FiniteCertificate cert;
    cert.m = 7;
    cert.N = 3;
    cert.blocks = {Block{0, 1}, Block{1, 3}, Block{4, 3}};
    cert.tail_start = 7;
    cert.block_sums = {Rational(3), Rational(1), make_ratio(-1, 3)};
    cert.total_sum = make_ratio(14, 3);
    cert.lower_bound = -9;
    const fs::path path = scratch() / "finite_cert.json";
    save_certificate(path.string(), cert, 2);
    const StoredCertificate stored = load_certificate(path.string());
    CHECK(stored.regime == "finite");
    CHECK(stored.x == 2);
    const FiniteCertificate& back = std::get<FiniteCertificate>(stored.cert);
    REQUIRE(back.blocks.size() == 3);
    CHECK(back.blocks[1].start == 1);
    CHECK(back.blocks[1].length == 3);
    CHECK(back.gaps.empty());
    CHECK(back.tail_start == 7);
    CHECK(back.block_sums == cert.block_sums);
    CHECK(back.total_sum == cert.total_sum);
    CHECK(back.lower_bound == cert.lower_bound);
}

TEST_CASE("sampled certificate files round trip exactly") {
    SampledCertificate cert;
    cert.m = 5;
    cert.N = 2;
    cert.blocks = {Block{0, 2}, Block{2, 1}};
    cert.gaps = {3};
    cert.tail_start = 4;
    cert.block_sums = {0.1 + 0.2, 1.0 / 3.0};  // deliberately non-representable sums
    cert.total_sum = 0.6333333333333333;
    cert.lower_bound = -2.2;
    const fs::path path = scratch() / "sampled_cert.json";
    save_certificate(path.string(), cert);
    const StoredCertificate stored = load_certificate(path.string());
    CHECK(stored.regime == "sampled");
    const SampledCertificate& back = std::get<SampledCertificate>(stored.cert);
    CHECK(back.block_sums == cert.block_sums);  // bit-for-bit through the file
    CHECK(back.total_sum == cert.total_sum);
    CHECK(back.lower_bound == cert.lower_bound);
    CHECK(back.gaps == cert.gaps);

    const fs::path again = scratch() / "sampled_cert_again.json";
    save_certificate(again.string(), cert);
    CHECK(slurp(path) == slurp(again));
}

TEST_CASE("certificate files reject tampering with the schema") {
    const fs::path path = scratch() / "bad_cert.json";
    Json doc;
    doc["regime"] = "weird";
    save_json(path.string(), doc);
    CHECK_THROWS_AS(load_certificate(path.string()), ConfigParse);
    doc["regime"] = "finite";
    doc["hacks"] = true;
    save_json(path.string(), doc);
    CHECK_THROWS_AS(load_certificate(path.string()), ConfigParse);
}

TEST_CASE("birkhoff CSV layout") {
    BirkhoffProfile profile;
    profile.x = 0;
    profile.values = {Rational(3), Rational(1)};
    CHECK(birkhoff_csv(profile) ==
          "# ergo csv v1: birkhoff x=0\n"
          "k,A_k,A_k_decimal\n"
          "1,3,3\n"
          "2,1,1\n");
    profile.values.push_back(make_ratio(1, 3));
    const std::string csv = birkhoff_csv(profile);
    const std::string third = "3,1/3," + format_double(to_double(make_ratio(1, 3))) + "\n";
    CHECK(csv.substr(csv.size() - third.size()) == third);
}

TEST_CASE("maximal CSV layout") {
    MaximalProfile profile;
    profile.horizon = 1;
    profile.values = {Rational(3), Rational(-1), Rational(-1)};
    CHECK(maximal_csv(profile) ==
          "# ergo csv v1: maximal N=1\n"
          "point,f_star,f_star_decimal\n"
          "0,3,3\n"
          "1,-1,-1\n"
          "2,-1,-1\n");
    profile.horizon.reset();
    CHECK(maximal_csv(profile).substr(0, 30) == "# ergo csv v1: maximal N=FULL\n");
}

TEST_CASE("convergence CSV layout") {
    CHECK(converge_csv({2, 4}, {0.5, 0.25}, 0.5) ==
          "# ergo csv v1: converge limit=0.5\n"
          "k,A_k,abs_err\n"
          "2,0.5,0\n"
          "4,0.25,0.25\n");
}

TEST_CASE("report JSON carries fixed keys") {
    VerificationReport report;
    report.failures.push_back(ClauseFailure{'a', "block (1,2) raw sum -2 is not positive"});
    const Json doc = verification_report_json(report);
    CHECK(doc.at("kind") == "certificate-verification");
    CHECK_FALSE(doc.at("ok").get<bool>());
    CHECK(doc.at("failures")[0].at("clause") == "a");
    const std::string dumped = doc.dump();
    CHECK(dumped.find("\"kind\"") < dumped.find("\"ok\""));  // ordered_json keeps insertion order
}

TEST_CASE("file errors are distinguished from parse errors") {
    CHECK_THROWS_AS(load_json((scratch() / "absent.json").string()), FileIO);
    const fs::path path = scratch() / "broken.json";
    save_text(path.string(), "{not json");
    CHECK_THROWS_AS(load_json(path.string()), ConfigParse);
}
