#include "ergo/generator.hpp"

#include <algorithm>
#include <utility>

#include "ergo/rng.hpp"

namespace ergo {

std::vector<Rational> lambda_grid(const FiniteSystem& sys, const Observable& f) {
    check_observable(sys, f);
    auto [lo_it, hi_it] = std::minmax_element(f.values.begin(), f.values.end());
    const Rational lo = *lo_it;
    const Rational hi = *hi_it;
    std::vector<Rational> grid{lo - 1, lo, (lo + hi) / 2, hi, hi + 1};
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    // Constant f collapses the interior values; pad back to five.
    Rational step(1, 2);
    while (grid.size() < 5) {
        grid.push_back(hi + 1 + step);
        step /= 2;
    }
    std::sort(grid.begin(), grid.end());
    return grid;
}

GeneratedCase random_finite_system(std::uint64_t seed, int n_max) {
    SplitMix64 rng(seed);
    const int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n_max)));

    std::vector<int> map(n);
    for (int i = 0; i < n; ++i) map[i] = i;
    for (int i = n - 1; i > 0; --i) {
        const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
        std::swap(map[i], map[j]);
    }

    const auto cycles = cycle_decomposition(map);
    std::vector<Rational> raw(cycles.size());
    Rational total = 0;
    for (std::size_t c = 0; c < cycles.size(); ++c) {
        raw[c] = make_ratio(1 + static_cast<long>(rng.below(100)),
                            1 + static_cast<long>(rng.below(100)));
        total += Rational(static_cast<long>(cycles[c].size())) * raw[c];
    }
    std::vector<Rational> cycle_weights(cycles.size());
    for (std::size_t c = 0; c < cycles.size(); ++c) cycle_weights[c] = raw[c] / total;

    FiniteSystem sys = make_finite_system(map, cycle_weights);

    Observable f;
    f.values.resize(n);
    for (int i = 0; i < n; ++i) {
        const long num = static_cast<long>(rng.below(101));
        const long den = 1 + static_cast<long>(rng.below(100));
        f.values[i] = make_ratio(rng.below(2) ? -num : num, den);
    }

    const auto grid = lambda_grid(sys, f);
    std::vector<Rational> per_cycle(cycles.size());
    for (std::size_t c = 0; c < cycles.size(); ++c)
        per_cycle[c] = grid[rng.below(grid.size())];
    InvariantFunction lambda = make_invariant_function(sys, per_cycle);

    return GeneratedCase{std::move(sys), std::move(f), std::move(lambda)};
}

}  // namespace ergo
