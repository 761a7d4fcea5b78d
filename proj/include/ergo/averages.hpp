// Birkhoff averages, maximal functions, exceedance sets, truncations and
// exact limit averages on finite systems, plus float profiles for sampled
// orbits.
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ergo/finite_system.hpp"
#include "ergo/sampled_system.hpp"

namespace ergo {

// values[k-1] = A_k f(x) = (1/k) * sum_{j<k} f(T^j x).
struct BirkhoffProfile {
    int x = 0;
    std::vector<Rational> values;
};

// Per-point f*_N = max_{1<=k<=N} A_k f. horizon == nullopt marks FULL, where
// each point is evaluated at its own cycle length (that already attains the
// sup over all k; see maximal_profile_full).
struct MaximalProfile {
    std::optional<int> horizon;
    std::vector<Rational> values;
};

// E_N = { f*_N > lambda }, strict inequality.
struct ExceedanceSet {
    std::optional<int> horizon;
    std::vector<char> member;
    Rational mass = 0;
};

// Per-point limsup/liminf of A_k f. On a finite permutation both equal the
// cycle mean, so the report carries the equalities the Corollary chain
// collapses to: integral_limsup == integral_liminf == integral_f.
struct ConvergenceReport {
    std::vector<Rational> limsup;
    std::vector<Rational> liminf;
    Rational integral_limsup = 0;
    Rational integral_liminf = 0;
    Rational integral_f = 0;
};

BirkhoffProfile birkhoff_profile(const FiniteSystem& sys, const Observable& f, int x, int K);

MaximalProfile maximal_profile(const FiniteSystem& sys, const Observable& f, int N);
MaximalProfile maximal_profile_serial(const FiniteSystem& sys, const Observable& f, int N);
MaximalProfile maximal_profile_full(const FiniteSystem& sys, const Observable& f);
MaximalProfile maximal_profile_full_serial(const FiniteSystem& sys, const Observable& f);

ExceedanceSet exceedance_set(const FiniteSystem& sys, const Observable& f, int N,
                             const InvariantFunction& lambda);
// Reuses an already computed profile; avoids the O(n*N) rescan in sweeps.
ExceedanceSet exceedance_set(const FiniteSystem& sys, const MaximalProfile& profile,
                             const InvariantFunction& lambda);

// phi_s: keep f(x) where |f(x)| <= s, zero elsewhere.
Observable truncate_observable(const Observable& f, int s);
// Truncation belongs to the exact regime; the sampled overload only throws.
[[noreturn]] SampledObservable truncate_observable(const SampledObservable& f, int s);

ConvergenceReport limit_averages(const FiniteSystem& sys, const Observable& f);

// Sampled regime: A_1..A_K along one orbit, compensated summation.
std::vector<double> birkhoff_profile(const SampledSystem& sys, const SampledObservable& f,
                                     std::size_t K);

// Averages at selected horizons only (ks strictly increasing). The value
// array is filled by the parallel kernel; the running sum itself stays
// serial so results are bit-identical to the serial path.
std::vector<double> birkhoff_at(const SampledSystem& sys, const SampledObservable& f,
                                const std::vector<std::size_t>& ks);
std::vector<double> birkhoff_at_serial(const SampledSystem& sys, const SampledObservable& f,
                                       const std::vector<std::size_t>& ks);

}  // namespace ergo
