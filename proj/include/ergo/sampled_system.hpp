#pragma once

// Sampled parametric systems evaluated along orbits: circle rotations and
// Bernoulli/Markov shifts. The doubling map is exposed as the Bernoulli(1/2)
// shift with the coordinate observable reconstructed from bits; iterating
// x -> 2x mod 1 in floating point collapses to 0 after ~53 steps, the shift
// representation does not.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "ergo/errors.hpp"

namespace ergo {

struct Rotation {
    double alpha = 0.0;            // in (0, 1)
    bool irrational_hint = true;   // flagged, not enforced numerically
    std::string alpha_spec;        // "golden" or the decimal it was built from
};

struct BernoulliShift {
    double p = 0.5;  // P(symbol 1), in (0, 1)
};

struct MarkovShift {
    std::vector<std::vector<double>> transition;
    std::vector<double> stationary;
};

struct SampledSystem {
    std::variant<Rotation, BernoulliShift, MarkovShift> kind;
    std::uint64_t seed = 0;
    double x0 = 0.0;  // rotation start point
};

// Row sums and stationarity checked to 1e-12.
void validate_sampled(const SampledSystem& sys);

SampledSystem make_rotation(const std::string& alpha_spec, double x0 = 0.0);
SampledSystem make_bernoulli(double p, std::uint64_t seed);
SampledSystem make_markov(std::vector<std::vector<double>> transition,
                          std::vector<double> stationary, std::uint64_t seed);

// Fixed evaluator catalog. Each entry knows its sup norm and its ergodic
// mean on the systems it is defined for.
struct SampledObservable {
    enum class Kind { Coordinate, CosineTwoPi, FirstSymbol, Indicator };

    Kind kind = Kind::Coordinate;
    int symbol = 1;      // FirstSymbol target
    double lo = 0.0;     // Indicator half-open interval [lo, hi)
    double hi = 1.0;

    double sup_norm() const { return 1.0; }
    std::string name() const;
};

SampledObservable parse_observable(const std::string& spec);

// Ergodic mean of `f` on `sys` (Lebesgue / product / stationary measure).
double observable_limit(const SampledSystem& sys, const SampledObservable& f);

struct OrbitTrace {
    std::string start;             // description of x0 / seed
    std::size_t length = 0;
    std::vector<double> f_values;  // f(T^k x0), k = 0..length-1
    double lambda_value = 0.0;
};

// The data-parallel kernel behind sampled orbits: f(T^k x) for k = 0..count-1.
// Serial variant is the reference the tests compare against.
std::vector<double> observable_values(const SampledSystem& sys, const SampledObservable& f,
                                      std::size_t count);
std::vector<double> observable_values_serial(const SampledSystem& sys, const SampledObservable& f,
                                             std::size_t count);

OrbitTrace sample_orbit(const SampledSystem& sys, std::size_t m, const SampledObservable& f,
                        double lambda_value = 0.0);

// frac(x0 + k*alpha), reduced in extended precision so orbits of length ~2^20
// do not drift.
double rotation_point(double x0, double alpha, std::uint64_t k);

}  // namespace ergo
