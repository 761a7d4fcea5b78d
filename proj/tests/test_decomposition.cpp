#include <algorithm>

#include "doctest.h"
#include "ergo/decomposition.hpp"
#include "ergo/generator.hpp"

using namespace ergo;

namespace {

FiniteSystem three_cycle() { return make_finite_system({1, 2, 0}, {make_ratio(1, 3)}); }

Observable spike() {
    Observable f;
    f.values = {Rational(3), Rational(-1), Rational(-1)};
    return f;
}

InvariantFunction zero_lambda(const FiniteSystem& sys) {
    return make_invariant_function(sys, std::vector<Rational>(sys.cycle_count(), Rational(0)));
}

bool has_clause(const VerificationReport& report, char clause) {
    return std::any_of(report.failures.begin(), report.failures.end(),
                       [clause](const ClauseFailure& f) { return f.clause == clause; });
}

}  // namespace

TEST_CASE("window terms along the 3-cycle orbit") {
    const FiniteSystem sys = three_cycle();
    const FiniteWindow input = build_input(sys, spike(), zero_lambda(sys), 0, 3, 7);
    REQUIRE(input.m == 7);
    const std::vector<Rational> expected = {3, -1, -1, 3, -1, -1, 3};
    for (int k = 0; k < 7; ++k) {
        CHECK(input.raw[k] == expected[k]);
        CHECK(input.member[k] == 1);
        CHECK(input.weighted[k] == expected[k]);
    }
    CHECK(input.f_sup == 3);
    CHECK(input.lambda_plus == 0);
}

TEST_CASE("membership vanishes when f stays below lambda") {
    const FiniteSystem sys = three_cycle();
    Observable f;
    f.values = {Rational(-1), Rational(-1), Rational(-1)};
    const FiniteWindow input = build_input(sys, f, zero_lambda(sys), 0, 3, 5);
    for (int k = 0; k < 5; ++k) {
        CHECK(input.member[k] == 0);
        CHECK(input.weighted[k] == 0);
        CHECK(input.raw[k] == -1);
    }
}

TEST_CASE("fixed point below lambda yields an all-gap window") {
    // cycles {0} and {1,2,3}; starting at the fixed point every average is -2
    const FiniteSystem sys =
        make_finite_system({0, 2, 3, 1}, {make_ratio(1, 4), make_ratio(1, 4)});
    Observable f;
    f.values = {Rational(-2), Rational(3), Rational(-1), Rational(-1)};
    const FiniteWindow input = build_input(sys, f, zero_lambda(sys), 0, 2, 6);
    for (int k = 0; k < 6; ++k) {
        CHECK(input.raw[k] == -2);
        CHECK(input.weighted[k] == 0);
        CHECK(input.member[k] == 0);
    }
}

TEST_CASE("profile-reuse overload matches the direct one") {
    for (std::uint64_t seed = 521; seed <= 530; ++seed) {
        const GeneratedCase gc = random_finite_system(seed, 8);
        const int N = std::max(1, gc.system.max_cycle_length() - 1);
        const MaximalProfile profile = maximal_profile(gc.system, gc.f, N);
        for (int x = 0; x < gc.system.n; ++x) {
            const FiniteWindow a = build_input(gc.system, gc.f, gc.lambda, x, N, 3 * N);
            const FiniteWindow b = build_input(gc.system, gc.f, gc.lambda, x, profile, 3 * N);
            CHECK(a.raw == b.raw);
            CHECK(a.member == b.member);
            CHECK(a.weighted == b.weighted);
        }
    }
}

TEST_CASE("shortest-block scan on the 7-term window") {
    const FiniteSystem sys = three_cycle();
    const FiniteWindow input = build_input(sys, spike(), zero_lambda(sys), 0, 3, 7);
    const FiniteCertificate cert = decompose(input);
    REQUIRE(cert.blocks.size() == 3);
    CHECK(cert.blocks[0].start == 0);
    CHECK(cert.blocks[0].length == 1);
    CHECK(cert.blocks[1].start == 1);
    CHECK(cert.blocks[1].length == 3);
    CHECK(cert.blocks[2].start == 4);
    CHECK(cert.blocks[2].length == 3);
    CHECK(cert.gaps.empty());
    CHECK(cert.tail_start == 7);
    CHECK(cert.block_sums == std::vector<Rational>{3, 1, 1});
    CHECK(cert.total_sum == 5);
    CHECK(cert.lower_bound == -9);
    CHECK(verify_certificate(cert, input).ok());
}

TEST_CASE("tail forms where no block completes before the window end") {
    const FiniteSystem sys = three_cycle();
    const FiniteWindow input = build_input(sys, spike(), zero_lambda(sys), 0, 3, 8);
    const FiniteCertificate cert = decompose(input);
    REQUIRE(cert.blocks.size() == 3);
    CHECK(cert.tail_start == 7);  // position 7 holds a lone -1
    CHECK(cert.total_sum == 4);
    CHECK(cert.lower_bound == -9);
    CHECK(verify_certificate(cert, input).ok());
}

TEST_CASE("all-false membership gives gaps only") {
    const FiniteSystem sys = three_cycle();
    Observable f;
    f.values = {Rational(-1), Rational(-1), Rational(-1)};
    const FiniteWindow input = build_input(sys, f, zero_lambda(sys), 0, 3, 5);
    const FiniteCertificate cert = decompose(input);
    CHECK(cert.blocks.empty());
    CHECK(cert.gaps == std::vector<long>{0, 1, 2, 3, 4});
    CHECK(cert.tail_start == 5);
    CHECK(cert.total_sum == 0);
    CHECK(verify_certificate(cert, input).ok());
}

TEST_CASE("longest-block variant passes the same verifier") {
    const FiniteSystem sys = three_cycle();
    const FiniteWindow input = build_input(sys, spike(), zero_lambda(sys), 0, 3, 7);
    const FiniteCertificate cert = decompose(input, BlockChoice::Longest);
    REQUIRE(cert.blocks.size() == 3);
    CHECK(cert.blocks[0].start == 0);
    CHECK(cert.blocks[0].length == 3);
    CHECK(cert.blocks[1].start == 3);
    CHECK(cert.blocks[1].length == 3);
    CHECK(cert.blocks[2].start == 6);
    CHECK(cert.blocks[2].length == 1);
    CHECK(cert.block_sums == std::vector<Rational>{1, 1, 3});
    CHECK(cert.total_sum == 5);
    CHECK(verify_certificate(cert, input).ok());
}

TEST_CASE("lying membership is a hard decomposition failure") {
    FiniteWindow input;
    input.m = 3;
    input.N = 2;
    input.raw = {Rational(-1), Rational(-1), Rational(-1)};
    input.member = {1, 0, 0};
    input.weighted = {Rational(-1), Rational(0), Rational(0)};
    input.f_sup = 1;
    input.lambda_plus = 0;
    CHECK_THROWS_AS(decompose(input), InternalContradiction);
}

TEST_CASE("stuck member near the window end becomes the tail") {
    FiniteWindow input;
    input.m = 3;
    input.N = 3;
    input.raw = {Rational(-1), Rational(-1), Rational(-1)};
    input.member = {0, 1, 0};
    input.weighted = {Rational(0), Rational(-1), Rational(0)};
    input.f_sup = 1;
    input.lambda_plus = 0;
    const FiniteCertificate cert = decompose(input);
    CHECK(cert.blocks.empty());
    CHECK(cert.gaps == std::vector<long>{0});
    CHECK(cert.tail_start == 1);
    CHECK(cert.total_sum == -1);
    CHECK(verify_certificate(cert, input).ok());
}

TEST_CASE("window preconditions") {
    const FiniteSystem sys = three_cycle();
    CHECK_THROWS_AS(build_input(sys, spike(), zero_lambda(sys), 0, 3, 2), WindowTooShort);
    FiniteWindow bad;
    bad.m = 4;
    bad.N = 2;
    bad.raw = {Rational(1), Rational(1)};  // wrong length
    bad.member = {1, 1, 1, 1};
    bad.weighted = {Rational(1), Rational(1), Rational(1), Rational(1)};
    CHECK_THROWS_AS(decompose(bad), WindowTooShort);
}

TEST_CASE("shortened block is caught as a non-positive raw sum") {
    const FiniteSystem sys = three_cycle();
    const FiniteWindow input = build_input(sys, spike(), zero_lambda(sys), 0, 3, 7);
    FiniteCertificate cert = decompose(input);
    cert.blocks[1].length = 2;  // raw sum over (1,2) is -2
    const VerificationReport report = verify_certificate(cert, input);
    CHECK_FALSE(report.ok());
    CHECK(has_clause(report, 'a'));
    CHECK(has_clause(report, 's'));  // position 3 loses its cover
    bool detail_names_sum = false;
    for (const ClauseFailure& f : report.failures)
        if (f.clause == 'a' && f.detail.find("-2") != std::string::npos) detail_names_sum = true;
    CHECK(detail_names_sum);
}

TEST_CASE("inflated lower bound fails the bound clauses") {
    const FiniteSystem sys = three_cycle();
    Observable f;
    f.values = {Rational(-1), Rational(-1), Rational(-1)};
    const FiniteWindow input = build_input(sys, f, zero_lambda(sys), 0, 3, 5);
    FiniteCertificate cert = decompose(input);  // total_sum is 0
    cert.lower_bound = 1;
    const VerificationReport report = verify_certificate(cert, input);
    CHECK(has_clause(report, 'e'));
    CHECK(has_clause(report, 'f'));
}

TEST_CASE("wrong recorded block sum fails only its own clause") {
    const FiniteSystem sys = three_cycle();
    const FiniteWindow input = build_input(sys, spike(), zero_lambda(sys), 0, 3, 7);
    FiniteCertificate cert = decompose(input);
    cert.block_sums[0] = 4;
    const VerificationReport report = verify_certificate(cert, input);
    REQUIRE(report.failures.size() == 1);
    CHECK(report.failures[0].clause == 'b');
}

TEST_CASE("wrong recorded total fails the total clause") {
    const FiniteSystem sys = three_cycle();
    const FiniteWindow input = build_input(sys, spike(), zero_lambda(sys), 0, 3, 7);
    FiniteCertificate cert = decompose(input);
    cert.total_sum = 6;
    const VerificationReport report = verify_certificate(cert, input);
    REQUIRE(report.failures.size() == 1);
    CHECK(report.failures[0].clause == 'f');
}

TEST_CASE("retracted tail start fails the tail-length clause") {
    const FiniteSystem sys = three_cycle();
    const FiniteWindow input = build_input(sys, spike(), zero_lambda(sys), 0, 3, 8);
    FiniteCertificate cert = decompose(input);
    cert.tail_start = 5;  // tail of length 3 > N-1, and a block now crosses it
    const VerificationReport report = verify_certificate(cert, input);
    CHECK(has_clause(report, 'd'));
    CHECK(has_clause(report, 's'));
}

TEST_CASE("member position disguised as a gap") {
    const FiniteSystem sys = three_cycle();
    const FiniteWindow input = build_input(sys, spike(), zero_lambda(sys), 0, 3, 7);
    FiniteCertificate cert = decompose(input);
    cert.blocks.erase(cert.blocks.begin());
    cert.block_sums.erase(cert.block_sums.begin());
    cert.gaps.push_back(0);
    const VerificationReport report = verify_certificate(cert, input);
    CHECK(has_clause(report, 's'));
    CHECK(has_clause(report, 'c'));  // weighted term 3 sits on the "gap"
}

TEST_CASE("mismatched window is rejected outright") {
    const FiniteSystem sys = three_cycle();
    const FiniteWindow input7 = build_input(sys, spike(), zero_lambda(sys), 0, 3, 7);
    const FiniteWindow input8 = build_input(sys, spike(), zero_lambda(sys), 0, 3, 8);
    const FiniteCertificate cert = decompose(input7);
    const VerificationReport report = verify_certificate(cert, input8);
    REQUIRE(report.failures.size() == 1);
    CHECK(report.failures[0].clause == 's');
}

TEST_CASE("round trip across random systems") {
    for (std::uint64_t seed = 531; seed <= 555; ++seed) {
        const GeneratedCase gc = random_finite_system(seed, 10);
        const int x = static_cast<int>(seed % gc.system.n);
        for (int N : {1, 2, gc.system.max_cycle_length()}) {
            const MaximalProfile profile = maximal_profile(gc.system, gc.f, N);
            for (long m : {long(N), 2L * N + 1, 17L * N}) {
                const FiniteWindow input =
                    build_input(gc.system, gc.f, gc.lambda, x, profile, m);
                for (BlockChoice choice : {BlockChoice::Shortest, BlockChoice::Longest}) {
                    const FiniteCertificate cert = decompose(input, choice);
                    const VerificationReport report = verify_certificate(cert, input);
                    CHECK(report.ok());
                    CHECK(cert.total_sum >= cert.lower_bound);
                }
            }
        }
    }
}

TEST_CASE("sampled rotation window round-trips") {
    const SampledSystem sys = make_rotation("golden");
    const SampledObservable coord = parse_observable("coordinate");
    const SampledWindow input = build_input(sys, coord, 0.1, 8, 200);
    const SampledCertificate cert = decompose(input);
    CHECK(verify_certificate(cert, input).ok());
    CHECK(cert.total_sum >= cert.lower_bound);
    const SampledCertificate longest = decompose(input, BlockChoice::Longest);
    CHECK(verify_certificate(longest, input).ok());
}

TEST_CASE("sampled windows never contradict internally") {
    const SampledSystem rot = make_rotation("golden");
    const SampledSystem bern = make_bernoulli(0.5, 20260814);
    const SampledObservable coord = parse_observable("coordinate");
    for (double lambda : {-1.0, 0.0, 0.3, 0.4999, 0.9, 2.0}) {
        for (const SampledSystem* sys : {&rot, &bern}) {
            const SampledWindow input = build_input(*sys, coord, lambda, 6, 150);
            const SampledCertificate cert = decompose(input);
            CHECK(verify_certificate(cert, input).ok());
        }
    }
}

TEST_CASE("integrated window bound on the 3-cycle") {
    const FiniteSystem sys = three_cycle();
    const IntegratedBoundReport report =
        integrated_bound_demo(sys, spike(), zero_lambda(sys), 3, {30, 300, 3000});
    CHECK(report.integral == make_ratio(1, 3));
    REQUIRE(report.steps.size() == 3);
    CHECK(report.steps[0].window_total == 10);
    CHECK(report.steps[0].bound == make_ratio(-3, 10));
    CHECK(report.steps[1].window_total == 100);
    CHECK(report.steps[1].bound == make_ratio(-3, 100));
    CHECK(report.steps[2].bound == make_ratio(-3, 1000));
    CHECK(report.all_match);
    CHECK(report.tenfold);
}

TEST_CASE("integrated bound with f identically zero") {
    const FiniteSystem sys = three_cycle();
    Observable z;
    z.values = {Rational(0), Rational(0), Rational(0)};
    const IntegratedBoundReport report =
        integrated_bound_demo(sys, z, zero_lambda(sys), 3, {30, 300});
    CHECK(report.integral == 0);
    for (const IntegratedBoundStep& step : report.steps) {
        CHECK(step.window_total == 0);
        CHECK(step.bound == 0);
        CHECK(step.matches);
    }
    CHECK(report.all_match);
    CHECK(report.tenfold);
}

TEST_CASE("integrated bound schedule preconditions") {
    const FiniteSystem sys = three_cycle();
    CHECK_THROWS_AS(integrated_bound_demo(sys, spike(), zero_lambda(sys), 3, {2}),
                    WindowTooShort);
    CHECK_THROWS_AS(integrated_bound_demo(sys, spike(), zero_lambda(sys), 3, {30, 30}),
                    WindowTooShort);
}

TEST_CASE("integrated bound matches across random systems") {
    for (std::uint64_t seed = 556; seed <= 575; ++seed) {
        const GeneratedCase gc = random_finite_system(seed, 10);
        const int N = gc.system.max_cycle_length();
        const IntegratedBoundReport report = integrated_bound_demo(
            gc.system, gc.f, gc.lambda, N, {10L * N, 100L * N, 1000L * N});
        CHECK(report.all_match);
        CHECK(report.tenfold);
        CHECK(report.integral >= 0);
    }
}
