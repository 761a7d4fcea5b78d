// Command-line front end: system files in, reports and certificates out.
// File outputs are byte-deterministic for a fixed config and seed; wall-clock
// timing goes to the console only.
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "ergo/decomposition.hpp"
#include "ergo/fuzz.hpp"
#include "ergo/generator.hpp"
#include "ergo/io.hpp"
#include "ergo/maximal_theorem.hpp"
#include "ergo/numeric.hpp"

namespace {

using namespace ergo;

FiniteCase& require_finite(LoadedSystem& loaded, const std::string& cmd) {
    if (auto* c = std::get_if<FiniteCase>(&loaded)) return *c;
    throw ConfigParse(cmd + " needs a finite system description");
}

SampledCase& require_sampled(LoadedSystem& loaded, const std::string& cmd) {
    if (auto* c = std::get_if<SampledCase>(&loaded)) return *c;
    throw ConfigParse(cmd + " needs a sampled system description");
}

std::pair<long, long> parse_range(const std::string& spec) {
    const auto dots = spec.find("..");
    if (dots == std::string::npos)
        throw ConfigParse("range '" + spec + "' must look like A..B");
    try {
        const long lo = std::stol(spec.substr(0, dots));
        const long hi = std::stol(spec.substr(dots + 2));
        if (lo > hi) throw ConfigParse("range '" + spec + "' is empty");
        return {lo, hi};
    } catch (const std::invalid_argument&) {
        throw ConfigParse("range '" + spec + "' must use integers");
    }
}

// "file" reuses the lambda from the system file; "const:VAL" is the same
// value on every cycle; otherwise a comma-separated per-cycle list.
InvariantFunction lambda_from_spec(const FiniteCase& c, const std::string& spec) {
    if (spec == "file") return c.lambda;
    try {
        if (spec.rfind("const:", 0) == 0) {
            const Rational v = parse_rational(spec.substr(6));
            return make_invariant_function(
                c.system, std::vector<Rational>(c.system.cycle_count(), v));
        }
        std::vector<Rational> per_cycle;
        std::size_t pos = 0;
        while (pos <= spec.size()) {
            const std::size_t comma = spec.find(',', pos);
            const std::size_t end = comma == std::string::npos ? spec.size() : comma;
            per_cycle.push_back(parse_rational(spec.substr(pos, end - pos)));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        return make_invariant_function(c.system, per_cycle);
    } catch (const std::invalid_argument& e) {
        throw ConfigParse(std::string("bad lambda spec: ") + e.what());
    }
}

void emit(const std::string& out_path, const Json& doc) {
    if (out_path.empty()) std::cout << doc.dump(2) << '\n';
    else save_json(out_path, doc);
}

void emit(const std::string& out_path, const std::string& body) {
    if (out_path.empty()) std::cout << body;
    else save_text(out_path, body);
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

int run_verify_maximal(const std::string& system_path, const std::string& lambda_spec,
                       const std::string& n_range, const std::string& out_path) {
    Timer timer;
    LoadedSystem loaded = load_system_file(system_path);
    FiniteCase& c = require_finite(loaded, "verify-maximal");
    const auto [lo, hi] = parse_range(n_range);
    const InvariantFunction lam = lambda_from_spec(c, lambda_spec);
    const TheoremSweep sweep =
        verify_maximal_theorem(c.system, c.f, lam, static_cast<int>(lo), static_cast<int>(hi));
    long failures = 0;
    for (const MaximalVerdict& v : sweep.verdicts)
        if (!v.holds) ++failures;
    if (!sweep.nested) ++failures;
    if (!sweep.stabilized) ++failures;
    emit(out_path, sweep_report_json(sweep));
    std::cerr << "verify-maximal: " << sweep.verdicts.size() << " verdicts, " << failures
              << " failures [" << timer.seconds() << " s]\n";
    return failures == 0 ? 0 : 1;
}

int run_decompose(const std::string& system_path, int x, int N, long m,
                  const std::string& choice_name, const std::string& observable_spec,
                  double lambda_value, const std::string& emit_path) {
    Timer timer;
    const BlockChoice choice =
        choice_name == "longest" ? BlockChoice::Longest : BlockChoice::Shortest;
    LoadedSystem loaded = load_system_file(system_path);
    std::size_t blocks = 0;
    std::string total;
    if (auto* fc = std::get_if<FiniteCase>(&loaded)) {
        const FiniteWindow input = build_input(fc->system, fc->f, fc->lambda, x, N, m);
        const FiniteCertificate cert = decompose(input, choice);
        blocks = cert.blocks.size();
        total = to_string(cert.total_sum);
        if (!emit_path.empty()) save_certificate(emit_path, cert, x);
    } else {
        auto& sc = std::get<SampledCase>(loaded);
        const SampledObservable obs = parse_observable(observable_spec);
        const SampledWindow input = build_input(sc.system, obs, lambda_value, N, m);
        const SampledCertificate cert = decompose(input, choice);
        blocks = cert.blocks.size();
        total = format_double(cert.total_sum);
        if (!emit_path.empty()) save_certificate(emit_path, cert);
    }
    std::cerr << "decompose: " << blocks << " blocks, total " << total << " ["
              << timer.seconds() << " s]\n";
    return 0;
}

int run_verify_cert(const std::string& cert_path, const std::string& system_path,
                    const std::string& observable_spec, double lambda_value,
                    const std::string& out_path) {
    Timer timer;
    const StoredCertificate stored = load_certificate(cert_path);
    LoadedSystem loaded = load_system_file(system_path);
    VerificationReport report;
    if (stored.regime == "finite") {
        FiniteCase& c = require_finite(loaded, "verify-cert (finite certificate)");
        const auto& cert = std::get<FiniteCertificate>(stored.cert);
        const FiniteWindow input =
            build_input(c.system, c.f, c.lambda, stored.x, cert.N, cert.m);
        report = verify_certificate(cert, input);
    } else {
        SampledCase& c = require_sampled(loaded, "verify-cert (sampled certificate)");
        const auto& cert = std::get<SampledCertificate>(stored.cert);
        const SampledObservable obs = parse_observable(observable_spec);
        const SampledWindow input = build_input(c.system, obs, lambda_value, cert.N, cert.m);
        report = verify_certificate(cert, input);
    }
    emit(out_path, verification_report_json(report));
    std::cerr << "verify-cert: " << (report.ok() ? "accepted" : "rejected") << ", "
              << report.failures.size() << " clause failures [" << timer.seconds() << " s]\n";
    return report.ok() ? 0 : 1;
}

int run_birkhoff(const std::string& system_path, int x, int K, const std::string& out_path) {
    Timer timer;
    LoadedSystem loaded = load_system_file(system_path);
    FiniteCase& c = require_finite(loaded, "birkhoff");
    const BirkhoffProfile profile = birkhoff_profile(c.system, c.f, x, K);
    emit(out_path, birkhoff_csv(profile));
    std::cerr << "birkhoff: " << profile.values.size() << " averages [" << timer.seconds()
              << " s]\n";
    return 0;
}

int run_converge(const std::string& system_path, const std::string& observable_spec,
                 int min_pow, int max_pow, const std::string& out_path) {
    Timer timer;
    LoadedSystem loaded = load_system_file(system_path);
    SampledCase& c = require_sampled(loaded, "converge");
    const SampledObservable obs = parse_observable(observable_spec);
    if (min_pow < 0 || max_pow < min_pow || max_pow > 30)
        throw ConfigParse("powers must satisfy 0 <= min <= max <= 30");
    std::vector<std::size_t> ks;
    for (int p = min_pow; p <= max_pow; ++p) ks.push_back(std::size_t(1) << p);
    const std::vector<double> averages = birkhoff_at(c.system, obs, ks);
    const double limit = observable_limit(c.system, obs);
    emit(out_path, converge_csv(ks, averages, limit));
    std::cerr << "converge: " << ks.size() << " horizons up to 2^" << max_pow << " ["
              << timer.seconds() << " s]\n";
    return 0;
}

int run_fuzz(const std::string& seed_range, int n_max, const std::string& out_dir, bool serial,
             const std::string& campaign) {
    const auto [lo, hi] = parse_range(seed_range);
    if (lo < 0) throw ConfigParse("seeds must be nonnegative");
    FuzzOptions opt;
    opt.seed_begin = static_cast<std::uint64_t>(lo);
    opt.seed_end = static_cast<std::uint64_t>(hi) + 1;
    opt.n_max = n_max;
    opt.failure_dir = out_dir;
    opt.parallel = !serial;

    long long failures = 0;
    auto report = [&](const char* name, const FuzzOutcome& outcome, double secs) {
        std::cerr << "fuzz " << name << ": " << outcome.cases << " systems, " << outcome.checks
                  << " checks, " << outcome.failures.size() << " failures [" << secs << " s]\n";
        for (const FuzzFailure& f : outcome.failures) {
            std::cerr << "  seed " << f.seed << ": " << f.context;
            if (!f.file.empty()) std::cerr << " (repro: " << f.file << ")";
            std::cerr << '\n';
        }
        failures += static_cast<long long>(outcome.failures.size());
    };
    if (campaign == "both" || campaign == "maximal") {
        Timer timer;
        const FuzzOutcome outcome = fuzz_maximal_theorem(opt);
        report("maximal", outcome, timer.seconds());
    }
    if (campaign == "both" || campaign == "decomposition") {
        Timer timer;
        const FuzzOutcome outcome = fuzz_decomposition(opt);
        report("decomposition", outcome, timer.seconds());
    }
    return failures == 0 ? 0 : 1;
}

int run_corollary(const std::string& system_path, int n_max, const std::string& out_path) {
    Timer timer;
    LoadedSystem loaded = load_system_file(system_path);
    FiniteCase& c = require_finite(loaded, "corollary");
    const CorollaryReport report = corollary_lambda_sweep(c.system, c.f, n_max);
    long failures = 0;
    for (const CorollaryStep& s : report.steps)
        if (!s.full_exceedance || !s.dominated) ++failures;
    if (!report.nondecreasing) ++failures;
    if (!report.limit_identity) ++failures;  // raise n_max past the largest limit average
    if (!report.plain_identity) ++failures;
    emit(out_path, corollary_report_json(report));
    std::cerr << "corollary: " << report.steps.size() << " thresholds, " << failures
              << " failures [" << timer.seconds() << " s]\n";
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ergodic averages, maximal inequality and block decomposition toolkit"};
    app.require_subcommand(1);
    std::function<int()> task;

    {
        auto* cmd = app.add_subcommand("verify-maximal",
                                       "exceedance integrals over a horizon range");
        auto system_path = std::make_shared<std::string>();
        auto lambda_spec = std::make_shared<std::string>("file");
        auto n_range = std::make_shared<std::string>();
        auto out_path = std::make_shared<std::string>();
        cmd->add_option("--system", *system_path, "system description JSON")->required();
        cmd->add_option("--lambda", *lambda_spec, "file | const:RAT | RAT,RAT,...");
        cmd->add_option("--n-range", *n_range, "horizon range A..B")->required();
        cmd->add_option("--out", *out_path, "report JSON path");
        cmd->callback([=, &task] {
            task = [=] {
                return run_verify_maximal(*system_path, *lambda_spec, *n_range, *out_path);
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("decompose", "emit a block-decomposition certificate");
        auto system_path = std::make_shared<std::string>();
        auto x = std::make_shared<int>(0);
        auto N = std::make_shared<int>(1);
        auto m = std::make_shared<long>(1);
        auto choice = std::make_shared<std::string>("shortest");
        auto observable = std::make_shared<std::string>("coordinate");
        auto lambda_value = std::make_shared<double>(0.0);
        auto emit_path = std::make_shared<std::string>();
        cmd->add_option("--system", *system_path)->required();
        cmd->add_option("--x", *x, "orbit start (finite systems)");
        cmd->add_option("--N", *N, "horizon")->required();
        cmd->add_option("--m", *m, "window length")->required();
        cmd->add_option("--block-choice", *choice)->check(CLI::IsMember({"shortest", "longest"}));
        cmd->add_option("--observable", *observable, "observable (sampled systems)");
        cmd->add_option("--lambda-value", *lambda_value, "threshold (sampled systems)");
        cmd->add_option("--emit", *emit_path, "certificate JSON path");
        cmd->callback([=, &task] {
            task = [=] {
                return run_decompose(*system_path, *x, *N, *m, *choice, *observable,
                                     *lambda_value, *emit_path);
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("verify-cert", "check a certificate against its system");
        auto cert_path = std::make_shared<std::string>();
        auto system_path = std::make_shared<std::string>();
        auto observable = std::make_shared<std::string>("coordinate");
        auto lambda_value = std::make_shared<double>(0.0);
        auto out_path = std::make_shared<std::string>();
        cmd->add_option("--cert", *cert_path)->required();
        cmd->add_option("--system", *system_path)->required();
        cmd->add_option("--observable", *observable, "observable (sampled systems)");
        cmd->add_option("--lambda-value", *lambda_value, "threshold (sampled systems)");
        cmd->add_option("--out", *out_path, "report JSON path");
        cmd->callback([=, &task] {
            task = [=] {
                return run_verify_cert(*cert_path, *system_path, *observable, *lambda_value,
                                       *out_path);
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("birkhoff", "orbit averages A_1..A_K at one point");
        auto system_path = std::make_shared<std::string>();
        auto x = std::make_shared<int>(0);
        auto K = std::make_shared<int>(1);
        auto out_path = std::make_shared<std::string>();
        cmd->add_option("--system", *system_path)->required();
        cmd->add_option("--x", *x)->required();
        cmd->add_option("--K", *K, "number of averages")->required();
        cmd->add_option("--out", *out_path, "CSV path");
        cmd->callback([=, &task] {
            task = [=] { return run_birkhoff(*system_path, *x, *K, *out_path); };
        });
    }
    {
        auto* cmd = app.add_subcommand("converge",
                                       "sampled-orbit averages at a geometric horizon schedule");
        auto system_path = std::make_shared<std::string>();
        auto observable = std::make_shared<std::string>();
        auto min_pow = std::make_shared<int>(4);
        auto max_pow = std::make_shared<int>(20);
        auto out_path = std::make_shared<std::string>();
        cmd->add_option("--system", *system_path)->required();
        cmd->add_option("--observable", *observable,
                        "coordinate | cos2pi | first-symbol[:S] | indicator:LO:HI")
            ->required();
        cmd->add_option("--min-pow", *min_pow, "first horizon 2^p");
        cmd->add_option("--max-pow", *max_pow, "last horizon 2^p");
        cmd->add_option("--out", *out_path, "CSV path");
        cmd->callback([=, &task] {
            task = [=] {
                return run_converge(*system_path, *observable, *min_pow, *max_pow, *out_path);
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("fuzz", "seeded campaigns over random finite systems");
        auto seeds = std::make_shared<std::string>();
        auto n_max = std::make_shared<int>(12);
        auto out_dir = std::make_shared<std::string>();
        auto serial = std::make_shared<bool>(false);
        auto campaign = std::make_shared<std::string>("both");
        cmd->add_option("--seeds", *seeds, "seed range A..B, inclusive")->required();
        cmd->add_option("--n-max", *n_max, "largest system size");
        cmd->add_option("--out", *out_dir, "directory for failure repro files");
        cmd->add_flag("--serial", *serial, "disable the parallel pool");
        cmd->add_option("--campaign", *campaign)
            ->check(CLI::IsMember({"both", "maximal", "decomposition"}));
        cmd->callback([=, &task] {
            task = [=] { return run_fuzz(*seeds, *n_max, *out_dir, *serial, *campaign); };
        });
    }
    {
        auto* cmd = app.add_subcommand("corollary", "limit-average threshold sweep");
        auto system_path = std::make_shared<std::string>();
        auto n_max = std::make_shared<int>(12);
        auto out_path = std::make_shared<std::string>();
        cmd->add_option("--system", *system_path)->required();
        cmd->add_option("--n-max", *n_max, "sweep 1/n thresholds up to n_max");
        cmd->add_option("--out", *out_path, "report JSON path");
        cmd->callback([=, &task] {
            task = [=] { return run_corollary(*system_path, *n_max, *out_path); };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Bad invocations share exit code 2 with config errors; --help stays 0.
        return app.exit(e) == 0 ? 0 : 2;
    }
    try {
        return task ? task() : 2;
    } catch (const ergo::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
