// Orbit-window decomposition into positive-sum blocks of bounded length,
// with independently checkable certificates and the integrated window bound.
//
// Templated over the number type: Rational windows are exact, double windows
// serve sampled orbits. The scan and the verifier share no code; the verifier
// recomputes every quantity from the input terms alone.
#pragma once

#include <string>
#include <vector>

#include "ergo/averages.hpp"
#include "ergo/finite_system.hpp"
#include "ergo/sampled_system.hpp"

namespace ergo {

// Terms along one orbit window of length m at horizon N:
//   raw[k]      r_k = f(T^k x) - lambda(x)
//   member[k]   whether T^k x lies in E_N = { f*_N > lambda }
//   weighted[k] g_k = r_k where member, else 0
// Term-wise domination g_k >= r_k holds because non-membership forces
// f(T^k x) <= lambda(x).
template <class Num>
struct WindowTerms {
    long m = 0;
    int N = 0;
    std::vector<Num> raw;
    std::vector<char> member;
    std::vector<Num> weighted;
    Num f_sup{};
    Num lambda_plus{};
};

struct Block {
    long start = 0;
    long length = 0;
};

// Every block has strictly positive raw sum and length <= N; gap positions
// are non-members (weighted term 0); the tail [tail_start, m) is shorter
// than N. total_sum is the plain left-to-right sum of the weighted terms.
template <class Num>
struct BlockCertificate {
    long m = 0;
    int N = 0;
    std::vector<Block> blocks;
    std::vector<long> gaps;
    long tail_start = 0;
    std::vector<Num> block_sums;
    Num total_sum{};
    Num lower_bound{};  // -N * (f_sup + lambda_plus)
};

enum class BlockChoice {
    Shortest,  // smallest block length with positive raw prefix sum
    Longest,   // largest such length; exercises the verifier's generality
};

struct ClauseFailure {
    char clause = '?';
    std::string detail;
};

struct VerificationReport {
    std::vector<ClauseFailure> failures;
    bool ok() const { return failures.empty(); }
};

using FiniteWindow = WindowTerms<Rational>;
using SampledWindow = WindowTerms<double>;
using FiniteCertificate = BlockCertificate<Rational>;
using SampledCertificate = BlockCertificate<double>;

template <class Num>
BlockCertificate<Num> decompose(const WindowTerms<Num>& input,
                                BlockChoice choice = BlockChoice::Shortest);

// Clause letters in the report:
//   a  block raw sums strictly positive
//   b  block weighted sums dominate raw sums and match block_sums
//   c  gap positions carry weighted term 0
//   d  tail length at most N - 1
//   e  tail weighted >= tail raw >= -(N-1)(f_sup + lambda_plus) >= lower_bound
//   f  total_sum equals the window sum and total_sum >= lower_bound
//   s  structural (window mismatch, overlap, ordering, coverage)
template <class Num>
VerificationReport verify_certificate(const BlockCertificate<Num>& cert,
                                      const WindowTerms<Num>& input);

FiniteWindow build_input(const FiniteSystem& sys, const Observable& f,
                         const InvariantFunction& lambda, int x, int N, long m);
// Variant reusing a horizon-N profile already computed for the system.
FiniteWindow build_input(const FiniteSystem& sys, const Observable& f,
                         const InvariantFunction& lambda, int x, const MaximalProfile& profile,
                         long m);
// Sampled orbits: membership near the window end reads N extra orbit steps.
SampledWindow build_input(const SampledSystem& sys, const SampledObservable& f,
                          double lambda_value, int N, long m);

struct IntegratedBoundStep {
    long m = 0;
    Rational window_total = 0;  // sum over x of w_x * (window sum starting at x)
    Rational bound = 0;         // -(N/m) * (f_sup + l1 norm of lambda+)
    bool matches = false;       // window_total == m * integral, exactly
};

// The averaging argument: window totals scale exactly like m times the
// exceedance integral while the additive error bound decays like 1/m.
struct IntegratedBoundReport {
    int N = 0;
    Rational integral = 0;  // integral of (f - lambda) over E_N
    std::vector<IntegratedBoundStep> steps;
    bool all_match = false;
    bool tenfold = false;  // consecutive bounds shrink by the m-ratio exactly
};

IntegratedBoundReport integrated_bound_demo(const FiniteSystem& sys, const Observable& f,
                                            const InvariantFunction& lambda, int N,
                                            const std::vector<long>& m_schedule);

}  // namespace ergo
