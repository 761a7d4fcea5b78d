#include "ergo/sampled_system.hpp"

#include <cmath>
#include <numbers>

#include "ergo/numeric.hpp"
#include "ergo/parallel.hpp"
#include "ergo/rng.hpp"

namespace ergo {

namespace {

constexpr double kStochasticTol = 1e-12;
constexpr int kCoordinateBits = 53;

std::vector<std::uint8_t> bernoulli_stream(std::uint64_t seed, double p, std::size_t count) {
    std::vector<std::uint8_t> bits(count);
    for (std::size_t k = 0; k < count; ++k) bits[k] = stream_unit(seed, k) < p ? 1 : 0;
    return bits;
}

std::vector<int> markov_stream(std::uint64_t seed, const MarkovShift& mk, std::size_t count) {
    std::vector<int> states(count);
    if (count == 0) return states;
    const int S = static_cast<int>(mk.stationary.size());
    auto pick = [S](const std::vector<double>& dist, double u) {
        double acc = 0.0;
        for (int s = 0; s < S; ++s) {
            acc += dist[s];
            if (u < acc) return s;
        }
        return S - 1;
    };
    states[0] = pick(mk.stationary, stream_unit(seed, 0));
    for (std::size_t k = 1; k < count; ++k)
        states[k] = pick(mk.transition[states[k - 1]], stream_unit(seed, k));
    return states;
}

// x = sum of the next 53 bits as a binary fraction; the coordinate of the
// point of the doubling map the bit-stream encodes.
double coordinate_from_bits(const std::vector<std::uint8_t>& bits, std::size_t k) {
    double x = 0.0;
    double scale = 0.5;
    for (int j = 0; j < kCoordinateBits; ++j) {
        if (bits[k + j]) x += scale;
        scale *= 0.5;
    }
    return x;
}

template <class PerIndex>
std::vector<double> fill_values(std::size_t count, bool parallel, PerIndex&& value_at) {
    std::vector<double> out(count);
    if (parallel) {
        const int threads = max_threads();
#pragma omp parallel for num_threads(threads) schedule(static)
        for (long long k = 0; k < static_cast<long long>(count); ++k)
            out[static_cast<std::size_t>(k)] = value_at(static_cast<std::size_t>(k));
    } else {
        for (std::size_t k = 0; k < count; ++k) out[k] = value_at(k);
    }
    return out;
}

std::vector<double> values_impl(const SampledSystem& sys, const SampledObservable& f,
                                std::size_t count, bool parallel) {
    validate_sampled(sys);
    if (const auto* rot = std::get_if<Rotation>(&sys.kind)) {
        const double x0 = sys.x0;
        const double alpha = rot->alpha;
        switch (f.kind) {
            case SampledObservable::Kind::Coordinate:
                return fill_values(count, parallel,
                                   [&](std::size_t k) { return rotation_point(x0, alpha, k); });
            case SampledObservable::Kind::CosineTwoPi:
                return fill_values(count, parallel, [&](std::size_t k) {
                    return std::cos(2.0 * std::numbers::pi * rotation_point(x0, alpha, k));
                });
            case SampledObservable::Kind::Indicator:
                return fill_values(count, parallel, [&](std::size_t k) {
                    const double x = rotation_point(x0, alpha, k);
                    return (f.lo <= x && x < f.hi) ? 1.0 : 0.0;
                });
            case SampledObservable::Kind::FirstSymbol:
                throw UnknownObservableForSystem("first-symbol is not defined on a rotation");
        }
    }
    if (const auto* shift = std::get_if<BernoulliShift>(&sys.kind)) {
        if (f.kind == SampledObservable::Kind::FirstSymbol) {
            const auto bits = bernoulli_stream(sys.seed, shift->p, count);
            const std::uint8_t want = f.symbol ? 1 : 0;
            return fill_values(count, parallel,
                               [&](std::size_t k) { return bits[k] == want ? 1.0 : 0.0; });
        }
        // Coordinate-style observables read 53 bits ahead of position k.
        const auto bits = bernoulli_stream(sys.seed, shift->p, count + kCoordinateBits);
        switch (f.kind) {
            case SampledObservable::Kind::Coordinate:
                return fill_values(count, parallel,
                                   [&](std::size_t k) { return coordinate_from_bits(bits, k); });
            case SampledObservable::Kind::CosineTwoPi:
                return fill_values(count, parallel, [&](std::size_t k) {
                    return std::cos(2.0 * std::numbers::pi * coordinate_from_bits(bits, k));
                });
            case SampledObservable::Kind::Indicator:
                return fill_values(count, parallel, [&](std::size_t k) {
                    const double x = coordinate_from_bits(bits, k);
                    return (f.lo <= x && x < f.hi) ? 1.0 : 0.0;
                });
            default:
                break;
        }
    }
    if (const auto* mk = std::get_if<MarkovShift>(&sys.kind)) {
        if (f.kind == SampledObservable::Kind::FirstSymbol) {
            if (f.symbol < 0 || f.symbol >= static_cast<int>(mk->stationary.size()))
                throw UnknownObservableForSystem("first-symbol target outside state space");
            const auto states = markov_stream(sys.seed, *mk, count);
            return fill_values(count, parallel,
                               [&](std::size_t k) { return states[k] == f.symbol ? 1.0 : 0.0; });
        }
        throw UnknownObservableForSystem("only first-symbol is defined on a Markov shift");
    }
    throw UnknownObservableForSystem("observable '" + f.name() + "' undefined for this system");
}

}  // namespace

void validate_sampled(const SampledSystem& sys) {
    if (const auto* rot = std::get_if<Rotation>(&sys.kind)) {
        if (!(rot->alpha > 0.0 && rot->alpha < 1.0))
            throw InvalidSampledSystem("rotation angle must lie in (0,1)");
        return;
    }
    if (const auto* shift = std::get_if<BernoulliShift>(&sys.kind)) {
        if (!(shift->p > 0.0 && shift->p < 1.0))
            throw InvalidSampledSystem("bernoulli parameter must lie in (0,1)");
        return;
    }
    const auto& mk = std::get<MarkovShift>(sys.kind);
    const std::size_t S = mk.stationary.size();
    if (S == 0 || mk.transition.size() != S)
        throw InvalidSampledSystem("markov shift needs a square transition matrix");
    double pi_total = 0.0;
    for (double v : mk.stationary) {
        if (v < 0.0) throw InvalidSampledSystem("negative stationary mass");
        pi_total += v;
    }
    if (std::fabs(pi_total - 1.0) > kStochasticTol)
        throw InvalidSampledSystem("stationary vector does not sum to 1");
    for (std::size_t i = 0; i < S; ++i) {
        if (mk.transition[i].size() != S)
            throw InvalidSampledSystem("transition row " + std::to_string(i) + " has wrong arity");
        double row = 0.0;
        for (double v : mk.transition[i]) {
            if (v < 0.0) throw InvalidSampledSystem("negative transition probability");
            row += v;
        }
        if (std::fabs(row - 1.0) > kStochasticTol)
            throw InvalidSampledSystem("transition row " + std::to_string(i) + " does not sum to 1");
    }
    for (std::size_t j = 0; j < S; ++j) {
        double mass = 0.0;
        for (std::size_t i = 0; i < S; ++i) mass += mk.stationary[i] * mk.transition[i][j];
        if (std::fabs(mass - mk.stationary[j]) > kStochasticTol)
            throw InvalidSampledSystem("stationary vector is not invariant (pi P != pi)");
    }
}

SampledSystem make_rotation(const std::string& alpha_spec, double x0) {
    Rotation rot;
    rot.alpha_spec = alpha_spec;
    if (alpha_spec == "golden") {
        rot.alpha = (std::sqrt(5.0) - 1.0) / 2.0;
        rot.irrational_hint = true;
    } else {
        rot.alpha = std::stod(alpha_spec);
        rot.irrational_hint = false;  // a decimal literal is rational
    }
    SampledSystem sys{rot, 0, x0};
    validate_sampled(sys);
    return sys;
}

SampledSystem make_bernoulli(double p, std::uint64_t seed) {
    SampledSystem sys{BernoulliShift{p}, seed, 0.0};
    validate_sampled(sys);
    return sys;
}

SampledSystem make_markov(std::vector<std::vector<double>> transition,
                          std::vector<double> stationary, std::uint64_t seed) {
    SampledSystem sys{MarkovShift{std::move(transition), std::move(stationary)}, seed, 0.0};
    validate_sampled(sys);
    return sys;
}

std::string SampledObservable::name() const {
    switch (kind) {
        case Kind::Coordinate: return "coordinate";
        case Kind::CosineTwoPi: return "cos2pi";
        case Kind::FirstSymbol: return "first-symbol:" + std::to_string(symbol);
        case Kind::Indicator:
            return "indicator:" + format_double(lo) + ":" + format_double(hi);
    }
    return "?";
}

SampledObservable parse_observable(const std::string& spec) {
    SampledObservable obs;
    if (spec == "coordinate") {
        obs.kind = SampledObservable::Kind::Coordinate;
        return obs;
    }
    if (spec == "cos2pi") {
        obs.kind = SampledObservable::Kind::CosineTwoPi;
        return obs;
    }
    if (spec.rfind("first-symbol", 0) == 0) {
        obs.kind = SampledObservable::Kind::FirstSymbol;
        if (spec.size() > 13 && spec[12] == ':') obs.symbol = std::stoi(spec.substr(13));
        else if (spec != "first-symbol")
            throw ConfigParse("bad observable spec '" + spec + "'");
        return obs;
    }
    if (spec.rfind("indicator:", 0) == 0) {
        const auto rest = spec.substr(10);
        const auto colon = rest.find(':');
        if (colon == std::string::npos) throw ConfigParse("indicator needs two bounds");
        obs.kind = SampledObservable::Kind::Indicator;
        obs.lo = std::stod(rest.substr(0, colon));
        obs.hi = std::stod(rest.substr(colon + 1));
        if (!(0.0 <= obs.lo && obs.lo < obs.hi && obs.hi <= 1.0))
            throw ConfigParse("indicator bounds must satisfy 0 <= lo < hi <= 1");
        return obs;
    }
    throw ConfigParse("unknown observable '" + spec + "'");
}

double observable_limit(const SampledSystem& sys, const SampledObservable& f) {
    if (std::holds_alternative<Rotation>(sys.kind)) {
        switch (f.kind) {
            case SampledObservable::Kind::Coordinate: return 0.5;
            case SampledObservable::Kind::CosineTwoPi: return 0.0;
            case SampledObservable::Kind::Indicator: return f.hi - f.lo;
            default: break;
        }
    }
    if (const auto* shift = std::get_if<BernoulliShift>(&sys.kind)) {
        switch (f.kind) {
            case SampledObservable::Kind::FirstSymbol:
                return f.symbol ? shift->p : 1.0 - shift->p;
            case SampledObservable::Kind::Coordinate:
                // mean of the 53-bit truncated coordinate
                return shift->p * (1.0 - 0x1.0p-53);
            case SampledObservable::Kind::CosineTwoPi:
                if (shift->p == 0.5) return 0.0;
                break;
            case SampledObservable::Kind::Indicator:
                if (shift->p == 0.5) return f.hi - f.lo;  // Lebesgue only
                break;
        }
    }
    if (const auto* mk = std::get_if<MarkovShift>(&sys.kind)) {
        if (f.kind == SampledObservable::Kind::FirstSymbol && f.symbol >= 0 &&
            f.symbol < static_cast<int>(mk->stationary.size()))
            return mk->stationary[f.symbol];
    }
    throw UnknownObservableForSystem("no closed-form mean for '" + f.name() + "' on this system");
}

std::vector<double> observable_values(const SampledSystem& sys, const SampledObservable& f,
                                      std::size_t count) {
    return values_impl(sys, f, count, true);
}

std::vector<double> observable_values_serial(const SampledSystem& sys, const SampledObservable& f,
                                             std::size_t count) {
    return values_impl(sys, f, count, false);
}

OrbitTrace sample_orbit(const SampledSystem& sys, std::size_t m, const SampledObservable& f,
                        double lambda_value) {
    if (m < 1) throw WindowTooShort("orbit length must be at least 1");
    OrbitTrace trace;
    if (const auto* rot = std::get_if<Rotation>(&sys.kind))
        trace.start = "x0=" + format_double(sys.x0) + ",alpha=" +
                      (rot->alpha_spec.empty() ? format_double(rot->alpha) : rot->alpha_spec);
    else
        trace.start = "seed=" + std::to_string(sys.seed);
    trace.length = m;
    trace.lambda_value = lambda_value;
    trace.f_values = observable_values(sys, f, m);
    return trace;
}

double rotation_point(double x0, double alpha, std::uint64_t k) {
    const long double z = static_cast<long double>(x0) + static_cast<long double>(k) * alpha;
    long double frac = z - floorl(z);
    if (frac >= 1.0L) frac -= 1.0L;  // guard the roundoff edge
    return static_cast<double>(frac);
}

}  // namespace ergo
