#include "ergo/maximal_theorem.hpp"

#include <algorithm>

namespace ergo {

namespace {

Rational exceedance_integral(const FiniteSystem& sys, const Observable& f,
                             const InvariantFunction& lambda, const ExceedanceSet& set) {
    Rational total = 0;
    for (int x = 0; x < sys.n; ++x)
        if (set.member[x]) total += sys.weights[x] * (f.values[x] - lambda.at(sys, x));
    return total;
}

MaximalVerdict verdict_from_set(const FiniteSystem& sys, const Observable& f,
                                const InvariantFunction& lambda, const ExceedanceSet& set) {
    MaximalVerdict v;
    v.horizon = set.horizon;
    v.lambda_desc = describe(lambda);
    v.integral = exceedance_integral(sys, f, lambda, set);
    v.holds = v.integral >= 0;
    v.exceedance_mass = set.mass;
    return v;
}

}  // namespace

MaximalVerdict maximal_integral(const FiniteSystem& sys, const Observable& f,
                                const MaximalProfile& profile, const InvariantFunction& lambda) {
    check_observable(sys, f);
    check_lambda(sys, lambda);
    return verdict_from_set(sys, f, lambda, exceedance_set(sys, profile, lambda));
}

MaximalVerdict maximal_integral(const FiniteSystem& sys, const Observable& f, int N,
                                const InvariantFunction& lambda) {
    check_observable(sys, f);
    check_lambda(sys, lambda);
    return verdict_from_set(sys, f, lambda, exceedance_set(sys, f, N, lambda));
}

TheoremSweep verify_maximal_theorem(const FiniteSystem& sys, const Observable& f,
                                    const InvariantFunction& lambda, int n_lo, int n_hi) {
    check_observable(sys, f);
    check_lambda(sys, lambda);
    if (n_lo < 1 || n_lo > n_hi) throw WindowTooShort("horizon range must satisfy 1 <= lo <= hi");

    TheoremSweep sweep;
    sweep.nested = true;
    sweep.stabilized = true;
    sweep.stabilization_horizon = sys.max_cycle_length();

    // One incremental pass: carry per-point running sums and best averages,
    // so f*_N for every N in the range falls out of a single orbit sweep.
    std::vector<Rational> sum(sys.n, Rational(0));
    std::vector<Rational> best(sys.n);
    std::vector<int> cursor(sys.n);
    for (int x = 0; x < sys.n; ++x) cursor[x] = x;

    std::vector<char> prev_member;
    bool have_stable = false;
    Rational stable_integral, stable_mass;
    for (int N = 1; N <= n_hi; ++N) {
        for (int x = 0; x < sys.n; ++x) {
            sum[x] += f.values[cursor[x]];
            const Rational avg = sum[x] / N;
            if (N == 1 || avg > best[x]) best[x] = avg;
            cursor[x] = sys.apply(cursor[x]);
        }
        if (N < n_lo) continue;

        ExceedanceSet set;
        set.horizon = N;
        set.member.resize(sys.n, 0);
        for (int x = 0; x < sys.n; ++x) {
            if (best[x] > lambda.at(sys, x)) {
                set.member[x] = 1;
                set.mass += sys.weights[x];
            }
        }
        if (!prev_member.empty())
            for (int x = 0; x < sys.n; ++x)
                if (prev_member[x] && !set.member[x]) sweep.nested = false;
        prev_member = set.member;

        sweep.verdicts.push_back(verdict_from_set(sys, f, lambda, set));
        const MaximalVerdict& v = sweep.verdicts.back();
        if (N >= sweep.stabilization_horizon) {
            if (!have_stable) {
                have_stable = true;
                stable_integral = v.integral;
                stable_mass = v.exceedance_mass;
            } else if (v.integral != stable_integral || v.exceedance_mass != stable_mass) {
                sweep.stabilized = false;
            }
        }
    }
    return sweep;
}

TruncationReport verify_truncation_extension(const FiniteSystem& sys, const Observable& f,
                                             const InvariantFunction& lambda, int N) {
    check_observable(sys, f);
    check_lambda(sys, lambda);

    TruncationReport report;
    report.horizon = N;
    const ExceedanceSet full_set = exceedance_set(sys, f, N, lambda);
    report.untruncated_integral = exceedance_integral(sys, f, lambda, full_set);

    const long s_max = std::max(1L, ceil_to_long(f.sup_norm()));
    report.all_nonnegative = true;
    for (long s = 1; s <= s_max; ++s) {
        const Observable phi = truncate_observable(f, static_cast<int>(s));
        const ExceedanceSet set = exceedance_set(sys, phi, N, lambda);
        TruncationStep step;
        step.s = static_cast<int>(s);
        step.integral = exceedance_integral(sys, phi, lambda, set);
        for (int x = 0; x < sys.n; ++x)
            if (set.member[x] != full_set.member[x]) step.symdiff_mass += sys.weights[x];
        step.holds = step.integral >= 0;
        if (!step.holds) report.all_nonnegative = false;
        report.steps.push_back(std::move(step));
    }
    report.final_matches = report.steps.back().integral == report.untruncated_integral;
    report.symdiff_reaches_zero = report.steps.back().symdiff_mass == 0;
    return report;
}

CorollaryReport corollary_lambda_sweep(const FiniteSystem& sys, const Observable& f, int n_max) {
    check_observable(sys, f);
    if (n_max < 1) throw WindowTooShort("corollary sweep needs n_max >= 1");

    CorollaryReport report;
    const Observable g = observable_positive_part(f);
    const ConvergenceReport conv_g = limit_averages(sys, g);
    report.integral_fplus = conv_g.integral_f;
    report.integral_limit_fplus = conv_g.integral_limsup;

    std::vector<Rational> mean_g(sys.cycles.size());
    for (std::size_t c = 0; c < sys.cycles.size(); ++c)
        mean_g[c] = conv_g.limsup[sys.cycles[c].front()];
    const Rational max_mean = *std::max_element(mean_g.begin(), mean_g.end());

    const int N_stab = sys.max_cycle_length();
    const MaximalProfile profile_g = maximal_profile(sys, g, N_stab);

    report.nondecreasing = true;
    Rational prev_cap = 0;
    for (int n = 1; n <= n_max; ++n) {
        std::vector<Rational> per_cycle(sys.cycles.size());
        Rational one_over_n = make_ratio(1, n);
        for (std::size_t c = 0; c < sys.cycles.size(); ++c) {
            const Rational cap = mean_g[c] < n ? mean_g[c] : Rational(n);
            per_cycle[c] = cap - one_over_n;
        }
        const InvariantFunction lam = make_invariant_function(sys, per_cycle);

        CorollaryStep step;
        step.n = n;
        step.integral_lambda = integral(sys, lam);
        step.cap_integral = step.integral_lambda + one_over_n;

        const MaximalVerdict verdict = maximal_integral(sys, g, profile_g, lam);
        step.full_exceedance = verdict.exceedance_mass == 1;
        step.dominated = verdict.holds && step.full_exceedance &&
                         report.integral_fplus >= step.integral_lambda;

        if (n >= 2) {
            if (step.integral_lambda < report.steps.back().integral_lambda)
                report.nondecreasing = false;
            // Rational stabilization rule: the cap integral repeats and n has
            // passed the largest cycle mean, so every cap is already exact.
            if (!report.stabilized_at && step.cap_integral == prev_cap && max_mean <= n)
                report.stabilized_at = n;
        }
        prev_cap = step.cap_integral;
        report.steps.push_back(std::move(step));
    }

    report.limit_identity = report.stabilized_at.has_value();
    if (report.stabilized_at) {
        for (const CorollaryStep& step : report.steps) {
            if (step.n < *report.stabilized_at) continue;
            if (step.cap_integral != report.integral_limit_fplus ||
                step.integral_lambda + make_ratio(1, step.n) != report.integral_limit_fplus)
                report.limit_identity = false;
        }
    }

    // Second pass of the same argument at lambda = (limit average of f) - 1/n.
    const ConvergenceReport conv_f = limit_averages(sys, f);
    report.integral_f = conv_f.integral_f;
    report.integral_limit_f = conv_f.integral_limsup;
    report.plain_identity = report.integral_limit_f == report.integral_f;
    std::vector<Rational> mean_f(sys.cycles.size());
    for (std::size_t c = 0; c < sys.cycles.size(); ++c)
        mean_f[c] = conv_f.limsup[sys.cycles[c].front()];
    const MaximalProfile profile_f = maximal_profile(sys, f, N_stab);
    for (int n = 1; n <= n_max && report.plain_identity; ++n) {
        const Rational one_over_n = make_ratio(1, n);
        std::vector<Rational> per_cycle(sys.cycles.size());
        for (std::size_t c = 0; c < sys.cycles.size(); ++c)
            per_cycle[c] = mean_f[c] - one_over_n;
        const InvariantFunction lam = make_invariant_function(sys, per_cycle);
        const MaximalVerdict verdict = maximal_integral(sys, f, profile_f, lam);
        if (!(verdict.exceedance_mass == 1 && verdict.holds &&
              integral(sys, lam) + one_over_n == report.integral_f))
            report.plain_identity = false;
    }
    return report;
}

}  // namespace ergo
