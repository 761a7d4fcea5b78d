#include "ergo/averages.hpp"

#include <algorithm>

#include "ergo/numeric.hpp"
#include "ergo/parallel.hpp"

namespace ergo {

namespace {

// f*_N at one point by a single orbit pass holding the running sum.
Rational maximal_at_point(const FiniteSystem& sys, const Observable& f, int x, int N) {
    Rational sum = 0;
    Rational best;
    int y = x;
    for (int k = 1; k <= N; ++k) {
        sum += f.values[y];
        const Rational avg = sum / k;
        if (k == 1 || avg > best) best = avg;
        y = sys.apply(y);
    }
    return best;
}

MaximalProfile profile_impl(const FiniteSystem& sys, const Observable& f,
                            std::optional<int> horizon, bool parallel) {
    check_observable(sys, f);
    if (horizon && *horizon < 1) throw WindowTooShort("maximal horizon must be at least 1");
    MaximalProfile out;
    out.horizon = horizon;
    out.values.resize(sys.n);
    auto point_horizon = [&](int x) { return horizon ? *horizon : sys.cycle_length(x); };
    if (parallel) {
        const int threads = max_threads();
#pragma omp parallel for num_threads(threads) schedule(dynamic, 8)
        for (int x = 0; x < sys.n; ++x)
            out.values[x] = maximal_at_point(sys, f, x, point_horizon(x));
    } else {
        for (int x = 0; x < sys.n; ++x)
            out.values[x] = maximal_at_point(sys, f, x, point_horizon(x));
    }
    return out;
}

}  // namespace

BirkhoffProfile birkhoff_profile(const FiniteSystem& sys, const Observable& f, int x, int K) {
    check_point(sys, x);
    check_observable(sys, f);
    if (K < 1) throw WindowTooShort("birkhoff horizon must be at least 1");
    BirkhoffProfile out;
    out.x = x;
    out.values.reserve(K);
    Rational sum = 0;
    int y = x;
    for (int k = 1; k <= K; ++k) {
        sum += f.values[y];
        out.values.push_back(sum / k);
        y = sys.apply(y);
    }
    return out;
}

MaximalProfile maximal_profile(const FiniteSystem& sys, const Observable& f, int N) {
    return profile_impl(sys, f, N, true);
}

MaximalProfile maximal_profile_serial(const FiniteSystem& sys, const Observable& f, int N) {
    return profile_impl(sys, f, N, false);
}

MaximalProfile maximal_profile_full(const FiniteSystem& sys, const Observable& f) {
    return profile_impl(sys, f, std::nullopt, true);
}

MaximalProfile maximal_profile_full_serial(const FiniteSystem& sys, const Observable& f) {
    return profile_impl(sys, f, std::nullopt, false);
}

ExceedanceSet exceedance_set(const FiniteSystem& sys, const MaximalProfile& profile,
                             const InvariantFunction& lambda) {
    if (static_cast<int>(profile.values.size()) != sys.n)
        throw PointOutOfRange("maximal profile does not match system size");
    ExceedanceSet out;
    out.horizon = profile.horizon;
    out.member.resize(sys.n, 0);
    for (int x = 0; x < sys.n; ++x) {
        if (profile.values[x] > lambda.at(sys, x)) {
            out.member[x] = 1;
            out.mass += sys.weights[x];
        }
    }
    return out;
}

ExceedanceSet exceedance_set(const FiniteSystem& sys, const Observable& f, int N,
                             const InvariantFunction& lambda) {
    return exceedance_set(sys, maximal_profile(sys, f, N), lambda);
}

Observable truncate_observable(const Observable& f, int s) {
    if (s < 1) throw WindowTooShort("truncation level must be at least 1");
    Observable out;
    out.values.reserve(f.values.size());
    for (const Rational& v : f.values)
        out.values.push_back(rational_abs(v) <= s ? v : Rational(0));
    return out;
}

SampledObservable truncate_observable(const SampledObservable& f, int) {
    throw TruncationOnSampledSystem("truncation of '" + f.name() +
                                    "' is only defined in the exact regime");
}

ConvergenceReport limit_averages(const FiniteSystem& sys, const Observable& f) {
    check_observable(sys, f);
    std::vector<Rational> cycle_mean(sys.cycles.size());
    for (std::size_t c = 0; c < sys.cycles.size(); ++c) {
        Rational sum = 0;
        for (int y : sys.cycles[c]) sum += f.values[y];
        cycle_mean[c] = sum / static_cast<long>(sys.cycles[c].size());
    }
    ConvergenceReport out;
    out.limsup.resize(sys.n);
    out.liminf.resize(sys.n);
    for (int x = 0; x < sys.n; ++x) {
        out.limsup[x] = cycle_mean[sys.cycle_index[x]];
        out.liminf[x] = out.limsup[x];
    }
    out.integral_limsup = integral(sys, out.limsup);
    out.integral_liminf = integral(sys, out.liminf);
    out.integral_f = integral(sys, f);
    return out;
}

std::vector<double> birkhoff_profile(const SampledSystem& sys, const SampledObservable& f,
                                     std::size_t K) {
    if (K < 1) throw WindowTooShort("birkhoff horizon must be at least 1");
    const auto values = observable_values(sys, f, K);
    std::vector<double> out(K);
    KahanSum sum;
    for (std::size_t k = 0; k < K; ++k) {
        sum.add(values[k]);
        out[k] = sum.value() / static_cast<double>(k + 1);
    }
    return out;
}

namespace {

std::vector<double> birkhoff_at_impl(const SampledSystem& sys, const SampledObservable& f,
                                     const std::vector<std::size_t>& ks, bool parallel) {
    if (ks.empty()) return {};
    for (std::size_t i = 0; i + 1 < ks.size(); ++i)
        if (ks[i] >= ks[i + 1]) throw WindowTooShort("horizon schedule must be increasing");
    if (ks.front() < 1) throw WindowTooShort("birkhoff horizon must be at least 1");
    const std::size_t K = ks.back();
    const auto values =
        parallel ? observable_values(sys, f, K) : observable_values_serial(sys, f, K);
    std::vector<double> out;
    out.reserve(ks.size());
    KahanSum sum;
    std::size_t next = 0;
    for (std::size_t k = 0; k < K; ++k) {
        sum.add(values[k]);
        if (k + 1 == ks[next]) {
            out.push_back(sum.value() / static_cast<double>(k + 1));
            ++next;
        }
    }
    return out;
}

}  // namespace

std::vector<double> birkhoff_at(const SampledSystem& sys, const SampledObservable& f,
                                const std::vector<std::size_t>& ks) {
    return birkhoff_at_impl(sys, f, ks, true);
}

std::vector<double> birkhoff_at_serial(const SampledSystem& sys, const SampledObservable& f,
                                       const std::vector<std::size_t>& ks) {
    return birkhoff_at_impl(sys, f, ks, false);
}

}  // namespace ergo
