#pragma once

// Exact finite measure-preserving systems: a permutation of {0..n-1} with
// strictly positive rational weights that are constant on each cycle. On a
// finite space with all-positive masses this is the only way a map can
// preserve the measure, so the validated constructor enforces exactly that.

#include <string>
#include <vector>

#include "ergo/errors.hpp"
#include "ergo/rational.hpp"

namespace ergo {

struct FiniteSystem {
    int n = 0;
    std::vector<int> map;                   // x -> T(x), a permutation
    std::vector<Rational> weights;          // per-point mass, sums to 1
    std::vector<std::vector<int>> cycles;   // orbit order within each cycle
    std::vector<int> cycle_index;           // point -> index into cycles

    int apply(int x) const { return map[x]; }
    int cycle_length(int x) const { return static_cast<int>(cycles[cycle_index[x]].size()); }
    int max_cycle_length() const;
    int cycle_count() const { return static_cast<int>(cycles.size()); }
};

bool is_permutation(const std::vector<int>& map);

// Cycles in discovery order (smallest unvisited point first), each listed in
// orbit order starting from its smallest point.
std::vector<std::vector<int>> cycle_decomposition(const std::vector<int>& map);

// Validated constructor: one weight per cycle, every point in a cycle gets
// that cycle's weight, and sum(cycle_length * weight) must be exactly 1.
FiniteSystem make_finite_system(std::vector<int> map, const std::vector<Rational>& cycle_weights);

struct Observable {
    std::vector<Rational> values;

    Rational sup_norm() const;
};

Observable observable_positive_part(const Observable& f);
Observable observable_negate(const Observable& f);

// T-invariant function: one exact value per cycle.
struct InvariantFunction {
    std::vector<Rational> per_cycle;

    const Rational& at(const FiniteSystem& sys, int x) const { return per_cycle[sys.cycle_index[x]]; }
    Rational positive_part_at(const FiniteSystem& sys, int x) const { return positive_part(at(sys, x)); }
};

InvariantFunction make_invariant_function(const FiniteSystem& sys, std::vector<Rational> per_cycle);
InvariantFunction invariant_negate(const InvariantFunction& lambda);
std::string describe(const InvariantFunction& lambda);

// Integral against the system's weights.
Rational integral(const FiniteSystem& sys, const std::vector<Rational>& pointwise);
Rational integral(const FiniteSystem& sys, const Observable& f);
Rational integral(const FiniteSystem& sys, const InvariantFunction& lambda);
Rational lambda_positive_l1(const FiniteSystem& sys, const InvariantFunction& lambda);

struct MeasureViolation {
    int point;
    Rational point_mass;
    Rational preimage_mass;
};

struct MeasurePreservationReport {
    std::vector<MeasureViolation> violations;

    bool preserved() const { return violations.empty(); }
};

// Report-based check of mu(T^{-1}{j}) == mu({j}) for every point j. Works on
// hand-built systems too; only `map` and `weights` are consulted.
MeasurePreservationReport validate_measure_preserving(const FiniteSystem& sys);

struct FiniteOrbitTrace {
    int x0 = 0;
    std::vector<int> points;        // T^k x0
    std::vector<Rational> f_values; // f(T^k x0)
    Rational lambda_value;          // constant along the orbit
};

FiniteOrbitTrace orbit_trace(const FiniteSystem& sys, const Observable& f,
                             const InvariantFunction& lambda, int x0, int m);

void check_point(const FiniteSystem& sys, int x);
void check_lambda(const FiniteSystem& sys, const InvariantFunction& lambda);
void check_observable(const FiniteSystem& sys, const Observable& f);

}  // namespace ergo
