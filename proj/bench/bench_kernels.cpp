// Compares the OpenMP kernels against their serial reference twins and
// checks the results agree before timing them.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "ergo/averages.hpp"
#include "ergo/fuzz.hpp"
#include "ergo/generator.hpp"
#include "ergo/parallel.hpp"
#include "ergo/rng.hpp"
#include "ergo/sampled_system.hpp"

namespace {

double now() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

struct Row {
    const char* name;
    double serial_s;
    double parallel_s;
    bool agree;
};

void print(const Row& row) {
    std::printf("%-28s serial %8.3f s   parallel %8.3f s   speedup %5.2fx   %s\n", row.name,
                row.serial_s, row.parallel_s, row.serial_s / row.parallel_s,
                row.agree ? "results match" : "RESULTS DIFFER");
}

Row bench_maximal_profile() {
    // One big cycle keeps every per-point horizon at the full length.
    const int n = 600;
    std::vector<int> map(n);
    for (int i = 0; i < n; ++i) map[i] = (i + 1) % n;
    ergo::FiniteSystem sys =
        ergo::make_finite_system(map, {ergo::make_ratio(1, n)});
    ergo::Observable f;
    ergo::SplitMix64 rng(7);
    for (int i = 0; i < n; ++i)
        f.values.push_back(ergo::make_ratio(static_cast<long>(rng.below(201)) - 100,
                                            1 + static_cast<long>(rng.below(50))));

    double t0 = now();
    const auto serial = ergo::maximal_profile_full_serial(sys, f);
    double t1 = now();
    const auto parallel = ergo::maximal_profile_full(sys, f);
    double t2 = now();
    return Row{"maximal_profile FULL n=600", t1 - t0, t2 - t1,
               serial.values == parallel.values};
}

Row bench_fuzz() {
    ergo::FuzzOptions opt;
    opt.seed_begin = 1;
    opt.seed_end = 41;
    opt.n_max = 12;

    opt.parallel = false;
    double t0 = now();
    const auto serial = ergo::fuzz_maximal_theorem(opt);
    double t1 = now();
    opt.parallel = true;
    const auto parallel = ergo::fuzz_maximal_theorem(opt);
    double t2 = now();
    const bool agree = serial.cases == parallel.cases && serial.checks == parallel.checks &&
                       serial.ok() && parallel.ok();
    return Row{"fuzz maximal seeds 1..40", t1 - t0, t2 - t1, agree};
}

Row bench_orbit_values() {
    const auto sys = ergo::make_rotation("golden", 0.0);
    const auto obs = ergo::parse_observable("cos2pi");
    const std::size_t count = 1u << 22;
    double t0 = now();
    const auto serial = ergo::observable_values_serial(sys, obs, count);
    double t1 = now();
    const auto parallel = ergo::observable_values(sys, obs, count);
    double t2 = now();
    return Row{"rotation orbit 2^22 values", t1 - t0, t2 - t1, serial == parallel};
}

}  // namespace

int main() {
    std::printf("threads available: %d\n", ergo::max_threads());
    const Row rows[] = {bench_orbit_values(), bench_maximal_profile(), bench_fuzz()};
    bool ok = true;
    for (const Row& row : rows) {
        print(row);
        ok = ok && row.agree;
    }
    return ok ? 0 : 1;
}
