#include "ergo/decomposition.hpp"

#include <algorithm>
#include <type_traits>

#include "ergo/maximal_theorem.hpp"
#include "ergo/numeric.hpp"

namespace ergo {

namespace {

std::string display(const Rational& v) { return to_string(v); }
std::string display(double v) { return format_double(v); }

template <class Num>
void check_window(const WindowTerms<Num>& input) {
    if (input.N < 1) throw WindowTooShort("horizon must be at least 1");
    if (input.m < input.N) throw WindowTooShort("window must be at least as long as the horizon");
    const auto m = static_cast<std::size_t>(input.m);
    if (input.raw.size() != m || input.member.size() != m || input.weighted.size() != m)
        throw WindowTooShort("window term arrays do not match the window length");
}

}  // namespace

template <class Num>
BlockCertificate<Num> decompose(const WindowTerms<Num>& input, BlockChoice choice) {
    check_window(input);
    BlockCertificate<Num> cert;
    cert.m = input.m;
    cert.N = input.N;
    cert.tail_start = input.m;

    long k = 0;
    while (k < input.m) {
        if (!input.member[k]) {
            cert.gaps.push_back(k);
            ++k;
            continue;
        }
        const long limit = std::min<long>(input.N, input.m - k);
        long chosen = 0;
        Num prefix{};
        for (long len = 1; len <= limit; ++len) {
            prefix += input.raw[k + len - 1];
            if (prefix > 0) {
                chosen = len;
                if (choice == BlockChoice::Shortest) break;
            }
        }
        if (chosen == 0) {
            // Membership promises a positive prefix within N terms; if the
            // window has room for it, its absence is a bug upstream.
            if (k + input.N > input.m) {
                cert.tail_start = k;
                break;
            }
            throw InternalContradiction("member position " + std::to_string(k) +
                                        " admits no positive raw prefix within the horizon");
        }
        Num sum{};
        for (long j = 0; j < chosen; ++j) sum += input.weighted[k + j];
        cert.blocks.push_back(Block{k, chosen});
        cert.block_sums.push_back(std::move(sum));
        k += chosen;
    }

    Num total{};
    for (long j = 0; j < input.m; ++j) total += input.weighted[j];
    cert.total_sum = std::move(total);
    cert.lower_bound = -(Num(input.N) * (input.f_sup + input.lambda_plus));
    return cert;
}

template <class Num>
VerificationReport verify_certificate(const BlockCertificate<Num>& cert,
                                      const WindowTerms<Num>& input) {
    VerificationReport report;
    auto fail = [&report](char clause, std::string detail) {
        report.failures.push_back(ClauseFailure{clause, std::move(detail)});
    };

    if (cert.m != input.m || cert.N != input.N) {
        fail('s', "certificate window (m,N) does not match the input");
        return report;
    }
    const long m = input.m;
    const int N = input.N;
    if (N < 1 || m < N || input.raw.size() != static_cast<std::size_t>(m) ||
        input.member.size() != static_cast<std::size_t>(m) ||
        input.weighted.size() != static_cast<std::size_t>(m)) {
        fail('s', "input terms malformed");
        return report;
    }
    for (long k = 0; k < m; ++k) {
        const bool mem = input.member[k] != 0;
        if (mem ? input.weighted[k] != input.raw[k] : input.weighted[k] != Num{}) {
            fail('s', "weighted term " + std::to_string(k) + " inconsistent with membership");
            return report;
        }
        if (input.weighted[k] < input.raw[k]) {
            fail('s', "term-wise domination fails at " + std::to_string(k));
            return report;
        }
    }
    if (cert.tail_start < 0 || cert.tail_start > m) {
        fail('s', "tail_start outside the window");
        return report;
    }
    if (cert.block_sums.size() != cert.blocks.size()) {
        fail('s', "one sum per block required");
        return report;
    }
    // Out-of-window indices make summation unsafe and stop checking here; the
    // remaining structural defects are recorded and checking continues, so a
    // tampered certificate still gets its quantitative clauses enumerated.
    for (const Block& b : cert.blocks) {
        if (b.length < 1 || b.start < 0 || b.start + b.length > m) {
            fail('s', "block at " + std::to_string(b.start) + " outside the window");
            return report;
        }
    }
    for (long g : cert.gaps) {
        if (g < 0 || g >= m) {
            fail('s', "gap " + std::to_string(g) + " outside the window");
            return report;
        }
    }

    // 0 = unassigned, 1 = block, 2 = gap; tail is [tail_start, m).
    std::vector<char> owner(static_cast<std::size_t>(m), 0);
    long prev_end = 0;
    for (const Block& b : cert.blocks) {
        if (b.length > N)
            fail('s', "block length " + std::to_string(b.length) + " exceeds N");
        if (b.start < prev_end)
            fail('s', "block at " + std::to_string(b.start) + " out of order");
        if (b.start + b.length > cert.tail_start)
            fail('s', "block at " + std::to_string(b.start) + " reaches past the tail");
        if (!input.member[b.start])
            fail('s', "block at " + std::to_string(b.start) + " starts at a non-member");
        for (long j = b.start; j < b.start + b.length; ++j) owner[j] = 1;
        prev_end = std::max(prev_end, b.start + b.length);
    }
    for (long g : cert.gaps) {
        if (g >= cert.tail_start || owner[g] == 1)
            fail('s', "gap " + std::to_string(g) + " outside [0, tail) or overlapping a block");
        if (input.member[g])
            fail('s', "gap " + std::to_string(g) + " is a member position");
        owner[g] = 2;
    }
    long uncovered_first = -1;
    long uncovered_count = 0;
    for (long k = 0; k < cert.tail_start; ++k) {
        if (owner[k] == 0) {
            if (uncovered_first < 0) uncovered_first = k;
            ++uncovered_count;
        }
    }
    if (uncovered_count > 0)
        fail('s', std::to_string(uncovered_count) +
                      " position(s) covered by neither block nor gap, first at " +
                      std::to_string(uncovered_first));

    // (a) strictly positive raw sum per block; (b) weighted dominates raw and
    // matches the recorded sum.
    for (std::size_t i = 0; i < cert.blocks.size(); ++i) {
        const Block& b = cert.blocks[i];
        Num raw_sum{};
        Num weighted_sum{};
        for (long j = b.start; j < b.start + b.length; ++j) {
            raw_sum += input.raw[j];
            weighted_sum += input.weighted[j];
        }
        if (!(raw_sum > 0))
            fail('a', "block (" + std::to_string(b.start) + "," + std::to_string(b.length) +
                          ") raw sum " + display(raw_sum) + " is not positive");
        if (weighted_sum < raw_sum)
            fail('b', "block (" + std::to_string(b.start) + "," + std::to_string(b.length) +
                          ") weighted sum below raw sum");
        if (cert.block_sums[i] != weighted_sum)
            fail('b', "recorded sum " + display(cert.block_sums[i]) + " for block (" +
                          std::to_string(b.start) + "," + std::to_string(b.length) +
                          ") differs from recomputed " + display(weighted_sum));
    }

    // (c) gaps contribute nothing.
    for (long g : cert.gaps)
        if (input.weighted[g] != Num{})
            fail('c', "gap " + std::to_string(g) + " has nonzero weighted term");

    // (d) tail shorter than the horizon.
    const long tail_len = m - cert.tail_start;
    if (tail_len > N - 1)
        fail('d', "tail length " + std::to_string(tail_len) + " exceeds N-1");

    // (e) the tail chain down to the recorded lower bound.
    const Num scale = input.f_sup + input.lambda_plus;
    const Num bound_expected = -(Num(N) * scale);
    Num tail_raw{};
    Num tail_weighted{};
    for (long k = cert.tail_start; k < m; ++k) {
        tail_raw += input.raw[k];
        tail_weighted += input.weighted[k];
    }
    const Num tail_floor = -(Num(N - 1) * scale);
    if (tail_weighted < tail_raw) fail('e', "tail weighted sum below tail raw sum");
    if (tail_raw < tail_floor)
        fail('e', "tail raw sum " + display(tail_raw) + " below -(N-1)(f_sup+lambda+) = " +
                      display(tail_floor));
    if (tail_floor < cert.lower_bound) fail('e', "tail floor below the certificate bound");
    if (cert.lower_bound != bound_expected)
        fail('e', "recorded lower bound " + display(cert.lower_bound) +
                      " differs from -N(f_sup+lambda+) = " + display(bound_expected));

    // (f) totals: left-to-right window sum, partition arithmetic, and the bound.
    Num total{};
    for (long k = 0; k < m; ++k) total += input.weighted[k];
    if (cert.total_sum != total)
        fail('f', "recorded total " + display(cert.total_sum) + " differs from window sum " +
                      display(total));
    if constexpr (std::is_same_v<Num, Rational>) {
        // Partition arithmetic from the input terms alone, so a wrong
        // recorded block sum cannot mask a coverage defect (or vice versa).
        Num parts = tail_weighted;
        for (const Block& b : cert.blocks)
            for (long j = b.start; j < b.start + b.length; ++j) parts += input.weighted[j];
        for (long g : cert.gaps) parts += input.weighted[g];
        if (parts != total) fail('f', "blocks + gaps + tail do not add up to the window sum");
    }
    if (total < cert.lower_bound)
        fail('f', "window sum " + display(total) + " below lower bound " +
                      display(cert.lower_bound));

    return report;
}

template BlockCertificate<Rational> decompose(const WindowTerms<Rational>&, BlockChoice);
template BlockCertificate<double> decompose(const WindowTerms<double>&, BlockChoice);
template VerificationReport verify_certificate(const BlockCertificate<Rational>&,
                                               const WindowTerms<Rational>&);
template VerificationReport verify_certificate(const BlockCertificate<double>&,
                                               const WindowTerms<double>&);

FiniteWindow build_input(const FiniteSystem& sys, const Observable& f,
                         const InvariantFunction& lambda, int x, const MaximalProfile& profile,
                         long m) {
    check_point(sys, x);
    check_observable(sys, f);
    check_lambda(sys, lambda);
    if (!profile.horizon) throw WindowTooShort("window membership needs a finite horizon profile");
    const int N = *profile.horizon;
    if (m < N) throw WindowTooShort("window must be at least as long as the horizon");

    FiniteWindow input;
    input.m = m;
    input.N = N;
    input.raw.reserve(m);
    input.member.reserve(m);
    input.weighted.reserve(m);
    const Rational lam = lambda.at(sys, x);
    int y = x;
    for (long k = 0; k < m; ++k) {
        const Rational r = f.values[y] - lam;
        const bool mem = profile.values[y] > lam;  // lambda is cycle-constant
        input.raw.push_back(r);
        input.member.push_back(mem ? 1 : 0);
        input.weighted.push_back(mem ? r : Rational(0));
        y = sys.apply(y);
    }
    input.f_sup = f.sup_norm();
    input.lambda_plus = positive_part(lam);
    return input;
}

FiniteWindow build_input(const FiniteSystem& sys, const Observable& f,
                         const InvariantFunction& lambda, int x, int N, long m) {
    return build_input(sys, f, lambda, x, maximal_profile(sys, f, N), m);
}

SampledWindow build_input(const SampledSystem& sys, const SampledObservable& f,
                          double lambda_value, int N, long m) {
    if (N < 1) throw WindowTooShort("horizon must be at least 1");
    if (m < N) throw WindowTooShort("window must be at least as long as the horizon");
    const std::size_t extended = static_cast<std::size_t>(m) + static_cast<std::size_t>(N);
    const std::vector<double> values = observable_values(sys, f, extended);

    SampledWindow input;
    input.m = m;
    input.N = N;
    std::vector<double> raw_ext(extended);
    for (std::size_t k = 0; k < extended; ++k) raw_ext[k] = values[k] - lambda_value;
    input.raw.assign(raw_ext.begin(), raw_ext.begin() + m);
    input.member.resize(m);
    input.weighted.resize(m);
    // Membership from the same prefix sums the scan will test, so the two
    // can never disagree about where a positive block exists.
    for (long k = 0; k < m; ++k) {
        double prefix = 0.0;
        bool mem = false;
        for (int j = 0; j < N; ++j) {
            prefix += raw_ext[k + j];
            if (prefix > 0.0) {
                mem = true;
                break;
            }
        }
        input.member[k] = mem ? 1 : 0;
        input.weighted[k] = mem ? input.raw[k] : 0.0;
    }
    input.f_sup = f.sup_norm();
    input.lambda_plus = lambda_value > 0.0 ? lambda_value : 0.0;
    return input;
}

IntegratedBoundReport integrated_bound_demo(const FiniteSystem& sys, const Observable& f,
                                            const InvariantFunction& lambda, int N,
                                            const std::vector<long>& m_schedule) {
    check_observable(sys, f);
    check_lambda(sys, lambda);
    for (std::size_t i = 0; i < m_schedule.size(); ++i) {
        if (m_schedule[i] < N) throw WindowTooShort("every window must be at least the horizon");
        if (i > 0 && m_schedule[i] <= m_schedule[i - 1])
            throw WindowTooShort("window schedule must be increasing");
    }

    IntegratedBoundReport report;
    report.N = N;
    const MaximalProfile profile = maximal_profile(sys, f, N);
    const ExceedanceSet set = exceedance_set(sys, profile, lambda);
    report.integral = maximal_integral(sys, f, profile, lambda).integral;
    const Rational scale = f.sup_norm() + lambda_positive_l1(sys, lambda);

    // Window sums are periodic along each cycle: q full turns plus a prefix.
    // cycle_term[c][i] is the weighted term at offset i around cycle c.
    std::vector<std::vector<Rational>> cycle_term(sys.cycles.size());
    std::vector<Rational> cycle_total(sys.cycles.size(), Rational(0));
    for (std::size_t c = 0; c < sys.cycles.size(); ++c) {
        const auto& cyc = sys.cycles[c];
        cycle_term[c].reserve(cyc.size());
        for (int y : cyc) {
            const Rational term =
                set.member[y] ? f.values[y] - lambda.at(sys, y) : Rational(0);
            cycle_total[c] += term;
            cycle_term[c].push_back(term);
        }
    }

    report.all_match = true;
    for (long m : m_schedule) {
        IntegratedBoundStep step;
        step.m = m;
        for (std::size_t c = 0; c < sys.cycles.size(); ++c) {
            const auto& cyc = sys.cycles[c];
            const long p = static_cast<long>(cyc.size());
            const long q = m / p;
            const long r = m % p;
            for (long o = 0; o < p; ++o) {
                Rational prefix = 0;
                for (long i = 0; i < r; ++i) prefix += cycle_term[c][(o + i) % p];
                step.window_total +=
                    sys.weights[cyc[o]] * (Rational(q) * cycle_total[c] + prefix);
            }
        }
        step.bound = -(Rational(N) * scale) / m;
        step.matches = step.window_total == Rational(m) * report.integral;
        if (!step.matches) report.all_match = false;
        report.steps.push_back(std::move(step));
    }

    report.tenfold = true;
    for (std::size_t i = 1; i < report.steps.size(); ++i) {
        const bool ratio_ok = report.steps[i].m == 10 * report.steps[i - 1].m &&
                              report.steps[i - 1].bound == report.steps[i].bound * 10;
        if (!ratio_ok) report.tenfold = false;
    }
    return report;
}

}  // namespace ergo
