// Deterministic random instances for property-test campaigns.
#pragma once

#include <cstdint>
#include <vector>

#include "ergo/finite_system.hpp"

namespace ergo {

struct GeneratedCase {
    FiniteSystem system;
    Observable f;
    InvariantFunction lambda;
};

// At least five exact thresholds spanning below min f, the interior, and
// above max f, so exceedance sets come out empty, full, and proper.
std::vector<Rational> lambda_grid(const FiniteSystem& sys, const Observable& f);

// Deterministic in seed. Permutation is a Fisher-Yates shuffle, cycle weights
// are positive rationals normalized to total mass exactly 1, f has numerators
// and denominators bounded by 100, lambda is drawn per cycle from lambda_grid.
GeneratedCase random_finite_system(std::uint64_t seed, int n_max);

}  // namespace ergo
