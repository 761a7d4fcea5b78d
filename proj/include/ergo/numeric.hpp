#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

namespace ergo {

// Tolerance for sampled-regime assertions: 1e-9 relative with a 1e-12
// absolute floor. Exact (rational) paths never use these.
constexpr double kRelTol = 1e-9;
constexpr double kAbsTol = 1e-12;

inline bool approx_equal(double a, double b, double rel = kRelTol, double abs_floor = kAbsTol) {
    const double diff = std::fabs(a - b);
    const double scale = std::fmax(std::fabs(a), std::fabs(b));
    return diff <= abs_floor || diff <= rel * scale;
}

// Compensated summation; long orbit sums must not drift.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }

    double value() const { return sum; }
};

// Shortest decimal that round-trips.
inline std::string format_double(double x) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    (void)ec;
    return std::string(buf, ptr);
}

}  // namespace ergo
