#include "ergo/finite_system.hpp"

#include <algorithm>

namespace ergo {

int FiniteSystem::max_cycle_length() const {
    std::size_t best = 0;
    for (const auto& c : cycles) best = std::max(best, c.size());
    return static_cast<int>(best);
}

bool is_permutation(const std::vector<int>& map) {
    const int n = static_cast<int>(map.size());
    std::vector<char> seen(map.size(), 0);
    for (int v : map) {
        if (v < 0 || v >= n || seen[v]) return false;
        seen[v] = 1;
    }
    return n > 0;
}

std::vector<std::vector<int>> cycle_decomposition(const std::vector<int>& map) {
    const int n = static_cast<int>(map.size());
    std::vector<char> visited(map.size(), 0);
    std::vector<std::vector<int>> cycles;
    for (int start = 0; start < n; ++start) {
        if (visited[start]) continue;
        std::vector<int> cycle;
        int x = start;
        do {
            visited[x] = 1;
            cycle.push_back(x);
            x = map[x];
        } while (x != start);
        cycles.push_back(std::move(cycle));
    }
    return cycles;
}

FiniteSystem make_finite_system(std::vector<int> map, const std::vector<Rational>& cycle_weights) {
    if (!is_permutation(map))
        throw NotAPermutation("map is not a permutation of {0..n-1}");

    FiniteSystem sys;
    sys.n = static_cast<int>(map.size());
    sys.map = std::move(map);
    sys.cycles = cycle_decomposition(sys.map);

    if (cycle_weights.size() != sys.cycles.size())
        throw CycleCountMismatch("expected " + std::to_string(sys.cycles.size()) +
                                 " cycle weights, got " + std::to_string(cycle_weights.size()));

    Rational total = 0;
    for (std::size_t c = 0; c < sys.cycles.size(); ++c) {
        if (cycle_weights[c] <= 0)
            throw WeightsNotPositive("cycle " + std::to_string(c) + " has weight " +
                                     to_string(cycle_weights[c]));
        total += Rational(static_cast<long>(sys.cycles[c].size())) * cycle_weights[c];
    }
    if (total != 1)
        throw WeightsDontSumToOne("weights sum to " + to_string(total));

    sys.weights.assign(sys.n, Rational(0));
    sys.cycle_index.assign(sys.n, 0);
    for (std::size_t c = 0; c < sys.cycles.size(); ++c) {
        for (int x : sys.cycles[c]) {
            sys.weights[x] = cycle_weights[c];
            sys.cycle_index[x] = static_cast<int>(c);
        }
    }
    return sys;
}

Rational Observable::sup_norm() const {
    Rational best = 0;
    for (const auto& v : values) best = std::max(best, rational_abs(v));
    return best;
}

Observable observable_positive_part(const Observable& f) {
    Observable g;
    g.values.reserve(f.values.size());
    for (const auto& v : f.values) g.values.push_back(positive_part(v));
    return g;
}

Observable observable_negate(const Observable& f) {
    Observable g;
    g.values.reserve(f.values.size());
    for (const auto& v : f.values) g.values.push_back(-v);
    return g;
}

InvariantFunction make_invariant_function(const FiniteSystem& sys, std::vector<Rational> per_cycle) {
    if (per_cycle.size() != sys.cycles.size())
        throw CycleCountMismatch("expected " + std::to_string(sys.cycles.size()) +
                                 " per-cycle values, got " + std::to_string(per_cycle.size()));
    InvariantFunction lambda{std::move(per_cycle)};
    // Constant-on-cycles makes invariance automatic; keep the exhaustive
    // check anyway, it is the contract the theorem relies on.
    for (int x = 0; x < sys.n; ++x) {
        if (lambda.at(sys, sys.apply(x)) != lambda.at(sys, x))
            throw InvalidLambda("lambda not T-invariant at point " + std::to_string(x));
    }
    return lambda;
}

InvariantFunction invariant_negate(const InvariantFunction& lambda) {
    InvariantFunction neg;
    neg.per_cycle.reserve(lambda.per_cycle.size());
    for (const auto& v : lambda.per_cycle) neg.per_cycle.push_back(-v);
    return neg;
}

std::string describe(const InvariantFunction& lambda) {
    if (lambda.per_cycle.size() == 1) return to_string(lambda.per_cycle[0]);
    std::string out = "[";
    for (std::size_t i = 0; i < lambda.per_cycle.size(); ++i) {
        if (i) out += ",";
        out += to_string(lambda.per_cycle[i]);
    }
    return out + "]";
}

Rational integral(const FiniteSystem& sys, const std::vector<Rational>& pointwise) {
    Rational total = 0;
    for (int x = 0; x < sys.n; ++x) total += sys.weights[x] * pointwise[x];
    return total;
}

Rational integral(const FiniteSystem& sys, const Observable& f) {
    return integral(sys, f.values);
}

Rational integral(const FiniteSystem& sys, const InvariantFunction& lambda) {
    Rational total = 0;
    for (int x = 0; x < sys.n; ++x) total += sys.weights[x] * lambda.at(sys, x);
    return total;
}

Rational lambda_positive_l1(const FiniteSystem& sys, const InvariantFunction& lambda) {
    Rational total = 0;
    for (int x = 0; x < sys.n; ++x) total += sys.weights[x] * lambda.positive_part_at(sys, x);
    return total;
}

MeasurePreservationReport validate_measure_preserving(const FiniteSystem& sys) {
    MeasurePreservationReport report;
    std::vector<Rational> preimage_mass(sys.n, Rational(0));
    for (int x = 0; x < sys.n; ++x) preimage_mass[sys.map[x]] += sys.weights[x];
    for (int j = 0; j < sys.n; ++j) {
        if (preimage_mass[j] != sys.weights[j])
            report.violations.push_back({j, sys.weights[j], preimage_mass[j]});
    }
    return report;
}

FiniteOrbitTrace orbit_trace(const FiniteSystem& sys, const Observable& f,
                             const InvariantFunction& lambda, int x0, int m) {
    check_point(sys, x0);
    check_observable(sys, f);
    check_lambda(sys, lambda);
    FiniteOrbitTrace trace;
    trace.x0 = x0;
    trace.lambda_value = lambda.at(sys, x0);
    trace.points.reserve(m);
    trace.f_values.reserve(m);
    int x = x0;
    for (int k = 0; k < m; ++k) {
        trace.points.push_back(x);
        trace.f_values.push_back(f.values[x]);
        x = sys.apply(x);
    }
    return trace;
}

void check_point(const FiniteSystem& sys, int x) {
    if (x < 0 || x >= sys.n)
        throw PointOutOfRange("point " + std::to_string(x) + " outside {0.." +
                              std::to_string(sys.n - 1) + "}");
}

void check_lambda(const FiniteSystem& sys, const InvariantFunction& lambda) {
    if (lambda.per_cycle.size() != sys.cycles.size())
        throw InvalidLambda("lambda has " + std::to_string(lambda.per_cycle.size()) +
                            " cycle values, system has " + std::to_string(sys.cycles.size()) +
                            " cycles");
}

void check_observable(const FiniteSystem& sys, const Observable& f) {
    if (static_cast<int>(f.values.size()) != sys.n)
        throw PointOutOfRange("observable has " + std::to_string(f.values.size()) +
                              " values, system has " + std::to_string(sys.n) + " points");
}

}  // namespace ergo
