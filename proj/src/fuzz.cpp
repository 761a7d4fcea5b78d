#include "ergo/fuzz.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>

#include "ergo/decomposition.hpp"
#include "ergo/generator.hpp"
#include "ergo/io.hpp"
#include "ergo/maximal_theorem.hpp"
#include "ergo/parallel.hpp"

namespace ergo {

namespace {

struct SeedResult {
    long long cases = 0;
    long long checks = 0;
    std::vector<FuzzFailure> failures;
};

std::string write_repro(const FuzzOptions& opt, const GeneratedCase& gc, std::uint64_t seed,
                        const std::string& context) {
    if (opt.failure_dir.empty()) return {};
    std::filesystem::create_directories(opt.failure_dir);
    const std::string path =
        opt.failure_dir + "/failure_seed_" + std::to_string(seed) + ".json";
    Json extra;
    extra["seed"] = seed;
    extra["check"] = context;
    save_finite_case(path, FiniteCase{gc.system, gc.f, gc.lambda}, extra);
    return path;
}

// All lambdas a campaign exercises for one generated case: the generated
// per-cycle lambda plus every constant from the threshold grid.
std::vector<InvariantFunction> campaign_lambdas(const GeneratedCase& gc) {
    std::vector<InvariantFunction> lambdas{gc.lambda};
    for (const Rational& v : lambda_grid(gc.system, gc.f)) {
        std::vector<Rational> per_cycle(gc.system.cycle_count(), v);
        lambdas.push_back(make_invariant_function(gc.system, per_cycle));
    }
    return lambdas;
}

SeedResult run_maximal_seed(const FuzzOptions& opt, std::uint64_t seed) {
    SeedResult result;
    const GeneratedCase gc = random_finite_system(seed, opt.n_max);
    result.cases = 1;
    auto fail = [&](const std::string& context) {
        result.failures.push_back(
            FuzzFailure{seed, context, write_repro(opt, gc, seed, context)});
    };
    try {
        for (const InvariantFunction& lam : campaign_lambdas(gc)) {
            const TheoremSweep sweep =
                verify_maximal_theorem(gc.system, gc.f, lam, 1, gc.system.n);
            for (const MaximalVerdict& v : sweep.verdicts) {
                ++result.checks;
                if (!v.holds)
                    fail("maximal integral " + to_string(v.integral) + " negative at N=" +
                         std::to_string(v.horizon.value_or(-1)) + " lambda=" + v.lambda_desc);
            }
            ++result.checks;
            if (!sweep.nested) fail("exceedance sets not nested, lambda=" + describe(lam));
            ++result.checks;
            if (!sweep.stabilized) fail("verdicts not stable past max cycle length");
        }
    } catch (const Error& e) {
        fail(std::string("exception: ") + e.what());
    }
    return result;
}

SeedResult run_decomposition_seed(const FuzzOptions& opt, std::uint64_t seed) {
    SeedResult result;
    const GeneratedCase gc = random_finite_system(seed, opt.n_max);
    result.cases = 1;
    auto fail = [&](const std::string& context) {
        result.failures.push_back(
            FuzzFailure{seed, context, write_repro(opt, gc, seed, context)});
    };
    try {
        const int p_max = gc.system.max_cycle_length();
        for (int N = 1; N <= p_max; ++N) {
            const MaximalProfile profile = maximal_profile_serial(gc.system, gc.f, N);
            for (int x = 0; x < gc.system.n; ++x) {
                if (gc.system.cycle_length(x) < N) continue;
                for (long m : {long(N), 2L * N, 17L * N}) {
                    const FiniteWindow input =
                        build_input(gc.system, gc.f, gc.lambda, x, profile, m);
                    const FiniteCertificate cert = decompose(input);
                    ++result.checks;
                    const VerificationReport report = verify_certificate(cert, input);
                    if (!report.ok())
                        fail("certificate rejected at x=" + std::to_string(x) + " N=" +
                             std::to_string(N) + " m=" + std::to_string(m) + ": clause " +
                             std::string(1, report.failures.front().clause) + " " +
                             report.failures.front().detail);
                    if (m == 17L * N) {
                        const FiniteCertificate longest =
                            decompose(input, BlockChoice::Longest);
                        ++result.checks;
                        const VerificationReport report2 = verify_certificate(longest, input);
                        if (!report2.ok())
                            fail("longest-block certificate rejected at x=" +
                                 std::to_string(x) + " N=" + std::to_string(N));
                    }
                }
            }
        }
    } catch (const Error& e) {
        fail(std::string("exception: ") + e.what());
    }
    return result;
}

template <class PerSeed>
FuzzOutcome run_campaign(const FuzzOptions& opt, PerSeed&& per_seed) {
    FuzzOutcome outcome;
    if (opt.seed_end <= opt.seed_begin) return outcome;
    const long long span = static_cast<long long>(opt.seed_end - opt.seed_begin);
    std::vector<SeedResult> results(static_cast<std::size_t>(span));
    std::atomic<bool> stop{false};

    if (opt.parallel) {
        const int threads = max_threads();
#pragma omp parallel for num_threads(threads) schedule(dynamic)
        for (long long i = 0; i < span; ++i) {
            if (stop.load(std::memory_order_relaxed)) continue;
            results[i] = per_seed(opt, opt.seed_begin + static_cast<std::uint64_t>(i));
            if (!results[i].failures.empty()) stop.store(true, std::memory_order_relaxed);
        }
    } else {
        for (long long i = 0; i < span; ++i) {
            results[i] = per_seed(opt, opt.seed_begin + static_cast<std::uint64_t>(i));
            if (!results[i].failures.empty()) break;
        }
    }

    // Merge in seed order so aggregation is independent of thread timing.
    for (const SeedResult& r : results) {
        outcome.cases += r.cases;
        outcome.checks += r.checks;
        outcome.failures.insert(outcome.failures.end(), r.failures.begin(), r.failures.end());
    }
    return outcome;
}

}  // namespace

FuzzOutcome fuzz_maximal_theorem(const FuzzOptions& opt) {
    return run_campaign(opt, [](const FuzzOptions& o, std::uint64_t seed) {
        return run_maximal_seed(o, seed);
    });
}

FuzzOutcome fuzz_decomposition(const FuzzOptions& opt) {
    return run_campaign(opt, [](const FuzzOptions& o, std::uint64_t seed) {
        return run_decomposition_seed(o, seed);
    });
}

}  // namespace ergo
