// The maximal inequality itself: exact exceedance integrals per horizon,
// the truncation extension to unbounded observables, and the invariant
// thresholds lambda_n = min(limit average, n) - 1/n that squeeze the limit.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ergo/averages.hpp"
#include "ergo/finite_system.hpp"

namespace ergo {

struct MaximalVerdict {
    std::optional<int> horizon;  // nullopt = stabilized (full) form
    std::string lambda_desc;
    Rational integral = 0;  // integral of (f - lambda) over E_N
    bool holds = false;     // integral >= 0
    Rational exceedance_mass = 0;
};

struct TheoremSweep {
    std::vector<MaximalVerdict> verdicts;  // one per N in [n_lo, n_hi]
    bool nested = false;        // E_N subset of E_{N+1} along the range
    bool stabilized = false;    // verdicts at N >= max cycle length all equal
    int stabilization_horizon = 0;
};

struct TruncationStep {
    int s = 0;
    Rational integral = 0;       // integral of (phi_s - lambda) over its own E_N
    Rational symdiff_mass = 0;   // mass of E_N(phi_s) symmetric-difference E_N(f)
    bool holds = false;
};

struct TruncationReport {
    int horizon = 0;
    Rational untruncated_integral = 0;
    std::vector<TruncationStep> steps;  // s = 1 .. max(1, ceil(sup|f|))
    bool all_nonnegative = false;
    bool final_matches = false;       // last step integral == untruncated, exactly
    bool symdiff_reaches_zero = false;
};

struct CorollaryStep {
    int n = 0;
    Rational integral_lambda = 0;  // integral of lambda_n
    Rational cap_integral = 0;     // integral of min(limit average, n)
    bool full_exceedance = false;  // { g*_N > lambda_n } is the whole space
    bool dominated = false;        // integral of g >= integral of lambda_n
};

struct CorollaryReport {
    Rational integral_fplus = 0;
    Rational integral_limit_fplus = 0;  // integral of the limit average of f+
    std::vector<CorollaryStep> steps;
    bool nondecreasing = false;
    // n* where cap_integral stabilizes at integral_limit_fplus; from there on
    // integral_lambda + 1/n recovers the limit exactly at every n.
    std::optional<int> stabilized_at;
    bool limit_identity = false;
    // Second sweep, lambda = limit average of f itself minus 1/n.
    Rational integral_f = 0;
    Rational integral_limit_f = 0;
    bool plain_identity = false;  // integral_limit_f == integral_f and lambda_n recovers it
};

MaximalVerdict maximal_integral(const FiniteSystem& sys, const Observable& f, int N,
                                const InvariantFunction& lambda);
// Same verdict from a profile already in hand.
MaximalVerdict maximal_integral(const FiniteSystem& sys, const Observable& f,
                                const MaximalProfile& profile, const InvariantFunction& lambda);

TheoremSweep verify_maximal_theorem(const FiniteSystem& sys, const Observable& f,
                                    const InvariantFunction& lambda, int n_lo, int n_hi);

TruncationReport verify_truncation_extension(const FiniteSystem& sys, const Observable& f,
                                             const InvariantFunction& lambda, int N);

CorollaryReport corollary_lambda_sweep(const FiniteSystem& sys, const Observable& f, int n_max);

}  // namespace ergo
