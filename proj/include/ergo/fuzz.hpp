// Seeded property campaigns over random finite systems. Seeds partition
// across threads; per-seed results are deterministic, failures abort the
// campaign and are written out as standalone repro files.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ergo {

struct FuzzOptions {
    std::uint64_t seed_begin = 1;
    std::uint64_t seed_end = 1001;  // exclusive
    int n_max = 12;
    std::string failure_dir;  // empty: report only, write no repro files
    bool parallel = true;
};

struct FuzzFailure {
    std::uint64_t seed = 0;
    std::string context;
    std::string file;  // repro path when failure_dir is set
};

struct FuzzOutcome {
    long long cases = 0;   // systems examined
    long long checks = 0;  // individual assertions evaluated
    std::vector<FuzzFailure> failures;
    bool ok() const { return failures.empty(); }
};

// Maximal inequality sweep: generated lambda plus the full threshold grid,
// every horizon N up to the system size, nestedness and stabilization.
FuzzOutcome fuzz_maximal_theorem(const FuzzOptions& opt);

// Decomposition round-trip: every point, every horizon up to the point's
// cycle length, windows m in {N, 2N, 17N}; certificates must verify.
FuzzOutcome fuzz_decomposition(const FuzzOptions& opt);

}  // namespace ergo
