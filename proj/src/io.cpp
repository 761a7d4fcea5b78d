#include "ergo/io.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "ergo/numeric.hpp"

namespace ergo {

namespace {

void expect_keys(const Json& obj, std::initializer_list<const char*> allowed,
                 const std::string& context) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* key : allowed)
            if (it.key() == key) known = true;
        if (!known) throw ConfigParse(context + ": unknown field '" + it.key() + "'");
    }
}

std::vector<Rational> rational_array(const Json& arr, const std::string& context) {
    std::vector<Rational> out;
    out.reserve(arr.size());
    for (const auto& v : arr) {
        if (!v.is_string()) throw ConfigParse(context + ": rationals must be \"p/q\" strings");
        try {
            out.push_back(parse_rational(v.get<std::string>()));
        } catch (const std::invalid_argument& e) {
            throw ConfigParse(context + ": " + e.what());
        }
    }
    return out;
}

Json rational_strings(const std::vector<Rational>& values) {
    Json arr = Json::array();
    for (const Rational& v : values) arr.push_back(to_string(v));
    return arr;
}

FiniteCase finite_from_json(const Json& doc, const std::string& context) {
    // "context" carries repro annotations and is ignored on load.
    expect_keys(doc, {"type", "map", "cycle_weights", "f", "lambda", "context"}, context);
    if (!doc.contains("map") || !doc.contains("cycle_weights") || !doc.contains("f"))
        throw ConfigParse(context + ": finite system needs map, cycle_weights and f");
    FiniteCase c;
    c.system = make_finite_system(doc.at("map").get<std::vector<int>>(),
                                  rational_array(doc.at("cycle_weights"), context));
    c.f.values = rational_array(doc.at("f"), context);
    check_observable(c.system, c.f);
    std::vector<Rational> per_cycle(c.system.cycle_count(), Rational(0));
    if (doc.contains("lambda")) per_cycle = rational_array(doc.at("lambda"), context);
    c.lambda = make_invariant_function(c.system, per_cycle);
    return c;
}

SampledCase sampled_from_json(const Json& doc, const std::string& context,
                              const std::string& type) {
    SampledCase c;
    if (type == "rotation") {
        expect_keys(doc, {"type", "alpha", "x0"}, context);
        if (!doc.contains("alpha") || !doc.at("alpha").is_string())
            throw ConfigParse(context + ": rotation needs alpha as a string");
        const double x0 = doc.contains("x0") ? doc.at("x0").get<double>() : 0.0;
        c.system = make_rotation(doc.at("alpha").get<std::string>(), x0);
        return c;
    }
    if (type == "bernoulli_shift") {
        expect_keys(doc, {"type", "p", "seed"}, context);
        if (!doc.contains("p") || !doc.contains("seed"))
            throw ConfigParse(context + ": bernoulli_shift needs p and seed");
        c.system = make_bernoulli(doc.at("p").get<double>(), doc.at("seed").get<std::uint64_t>());
        return c;
    }
    expect_keys(doc, {"type", "transition", "stationary", "seed"}, context);
    if (!doc.contains("transition") || !doc.contains("stationary") || !doc.contains("seed"))
        throw ConfigParse(context + ": markov_shift needs transition, stationary and seed");
    c.system = make_markov(doc.at("transition").get<std::vector<std::vector<double>>>(),
                           doc.at("stationary").get<std::vector<double>>(),
                           doc.at("seed").get<std::uint64_t>());
    return c;
}

Json blocks_json(const std::vector<Block>& blocks) {
    Json arr = Json::array();
    for (const Block& b : blocks) arr.push_back(Json::array({b.start, b.length}));
    return arr;
}

std::vector<Block> blocks_from_json(const Json& arr, const std::string& context) {
    std::vector<Block> out;
    for (const auto& pair : arr) {
        if (!pair.is_array() || pair.size() != 2)
            throw ConfigParse(context + ": blocks must be [start, length] pairs");
        out.push_back(Block{pair[0].get<long>(), pair[1].get<long>()});
    }
    return out;
}

}  // namespace

LoadedSystem system_from_json(const Json& doc, const std::string& context) {
    try {
        if (!doc.is_object() || !doc.contains("type") || !doc.at("type").is_string())
            throw ConfigParse(context + ": system description needs a \"type\" field");
        const std::string type = doc.at("type").get<std::string>();
        if (type == "finite") return finite_from_json(doc, context);
        if (type == "rotation" || type == "bernoulli_shift" || type == "markov_shift")
            return sampled_from_json(doc, context, type);
        throw ConfigParse(context + ": unknown system type '" + type + "'");
    } catch (const Json::exception& e) {
        throw ConfigParse(context + ": " + e.what());
    }
}

Json load_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileIO("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ConfigParse(path + ": " + e.what());
    }
}

LoadedSystem load_system_file(const std::string& path) {
    return system_from_json(load_json(path), path);
}

Json finite_case_json(const FiniteCase& c) {
    Json doc;
    doc["type"] = "finite";
    doc["map"] = c.system.map;
    std::vector<Rational> cycle_weights;
    for (const auto& cyc : c.system.cycles) cycle_weights.push_back(c.system.weights[cyc.front()]);
    doc["cycle_weights"] = rational_strings(cycle_weights);
    doc["f"] = rational_strings(c.f.values);
    doc["lambda"] = rational_strings(c.lambda.per_cycle);
    return doc;
}

void save_json(const std::string& path, const Json& doc) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FileIO("cannot write " + path);
    out << doc.dump(2) << '\n';
    if (!out) throw FileIO("write failed for " + path);
}

void save_text(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FileIO("cannot write " + path);
    out << body;
    if (!out) throw FileIO("write failed for " + path);
}

void save_finite_case(const std::string& path, const FiniteCase& c, const Json& extra) {
    Json doc = finite_case_json(c);
    if (!extra.empty()) doc["context"] = extra;
    save_json(path, doc);
}

namespace {

template <class Num, class ToJson>
Json certificate_json(const BlockCertificate<Num>& cert, ToJson&& num_json) {
    Json doc;
    doc["m"] = cert.m;
    doc["N"] = cert.N;
    doc["blocks"] = blocks_json(cert.blocks);
    doc["gaps"] = cert.gaps;
    doc["tail_start"] = cert.tail_start;
    Json sums = Json::array();
    for (const Num& s : cert.block_sums) sums.push_back(num_json(s));
    doc["block_sums"] = sums;
    doc["total_sum"] = num_json(cert.total_sum);
    doc["lower_bound"] = num_json(cert.lower_bound);
    return doc;
}

template <class Num, class FromJson>
BlockCertificate<Num> certificate_from_json(const Json& doc, const std::string& context,
                                            FromJson&& num_from) {
    BlockCertificate<Num> cert;
    cert.m = doc.at("m").get<long>();
    cert.N = doc.at("N").get<int>();
    cert.blocks = blocks_from_json(doc.at("blocks"), context);
    cert.gaps = doc.at("gaps").get<std::vector<long>>();
    cert.tail_start = doc.at("tail_start").get<long>();
    for (const auto& s : doc.at("block_sums")) cert.block_sums.push_back(num_from(s));
    cert.total_sum = num_from(doc.at("total_sum"));
    cert.lower_bound = num_from(doc.at("lower_bound"));
    return cert;
}

}  // namespace

void save_certificate(const std::string& path, const FiniteCertificate& cert, int x) {
    Json doc;
    doc["regime"] = "finite";
    doc["x"] = x;
    doc.update(certificate_json(cert, [](const Rational& v) { return to_string(v); }));
    save_json(path, doc);
}

void save_certificate(const std::string& path, const SampledCertificate& cert) {
    Json doc;
    doc["regime"] = "sampled";
    doc.update(certificate_json(cert, [](double v) { return v; }));
    save_json(path, doc);
}

StoredCertificate load_certificate(const std::string& path) {
    const Json doc = load_json(path);
    try {
        expect_keys(doc,
                    {"regime", "x", "m", "N", "blocks", "gaps", "tail_start", "block_sums",
                     "total_sum", "lower_bound"},
                    path);
        StoredCertificate stored;
        stored.regime = doc.at("regime").get<std::string>();
        if (stored.regime == "finite") {
            stored.x = doc.at("x").get<int>();
            stored.cert = certificate_from_json<Rational>(
                doc, path, [&](const Json& v) { return parse_rational(v.get<std::string>()); });
        } else if (stored.regime == "sampled") {
            stored.cert = certificate_from_json<double>(
                doc, path, [](const Json& v) { return v.get<double>(); });
        } else {
            throw ConfigParse(path + ": unknown certificate regime '" + stored.regime + "'");
        }
        return stored;
    } catch (const Json::exception& e) {
        throw ConfigParse(path + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigParse(path + ": " + e.what());
    }
}

std::string birkhoff_csv(const BirkhoffProfile& profile) {
    std::ostringstream out;
    out << "# ergo csv v1: birkhoff x=" << profile.x << "\n";
    out << "k,A_k,A_k_decimal\n";
    for (std::size_t k = 0; k < profile.values.size(); ++k)
        out << (k + 1) << ',' << to_string(profile.values[k]) << ','
            << format_double(to_double(profile.values[k])) << '\n';
    return out.str();
}

std::string maximal_csv(const MaximalProfile& profile) {
    std::ostringstream out;
    out << "# ergo csv v1: maximal N=";
    if (profile.horizon) out << *profile.horizon;
    else out << "FULL";
    out << "\npoint,f_star,f_star_decimal\n";
    for (std::size_t x = 0; x < profile.values.size(); ++x)
        out << x << ',' << to_string(profile.values[x]) << ','
            << format_double(to_double(profile.values[x])) << '\n';
    return out.str();
}

std::string converge_csv(const std::vector<std::size_t>& ks, const std::vector<double>& averages,
                         double limit) {
    std::ostringstream out;
    out << "# ergo csv v1: converge limit=" << format_double(limit) << "\n";
    out << "k,A_k,abs_err\n";
    for (std::size_t i = 0; i < ks.size(); ++i)
        out << ks[i] << ',' << format_double(averages[i]) << ','
            << format_double(std::abs(averages[i] - limit)) << '\n';
    return out.str();
}

Json sweep_report_json(const TheoremSweep& sweep) {
    Json doc;
    doc["kind"] = "maximal-sweep";
    doc["nested"] = sweep.nested;
    doc["stabilized"] = sweep.stabilized;
    doc["stabilization_horizon"] = sweep.stabilization_horizon;
    Json verdicts = Json::array();
    for (const MaximalVerdict& v : sweep.verdicts) {
        Json entry;
        entry["N"] = v.horizon ? Json(*v.horizon) : Json("FULL");
        entry["lambda"] = v.lambda_desc;
        entry["integral"] = to_string(v.integral);
        entry["holds"] = v.holds;
        entry["exceedance_mass"] = to_string(v.exceedance_mass);
        verdicts.push_back(std::move(entry));
    }
    doc["verdicts"] = std::move(verdicts);
    return doc;
}

Json truncation_report_json(const TruncationReport& report) {
    Json doc;
    doc["kind"] = "truncation";
    doc["N"] = report.horizon;
    doc["untruncated_integral"] = to_string(report.untruncated_integral);
    doc["all_nonnegative"] = report.all_nonnegative;
    doc["final_matches"] = report.final_matches;
    doc["symdiff_reaches_zero"] = report.symdiff_reaches_zero;
    Json steps = Json::array();
    for (const TruncationStep& s : report.steps) {
        Json entry;
        entry["s"] = s.s;
        entry["integral"] = to_string(s.integral);
        entry["symdiff_mass"] = to_string(s.symdiff_mass);
        entry["holds"] = s.holds;
        steps.push_back(std::move(entry));
    }
    doc["steps"] = std::move(steps);
    return doc;
}

Json corollary_report_json(const CorollaryReport& report) {
    Json doc;
    doc["kind"] = "corollary";
    doc["integral_fplus"] = to_string(report.integral_fplus);
    doc["integral_limit_fplus"] = to_string(report.integral_limit_fplus);
    doc["nondecreasing"] = report.nondecreasing;
    doc["stabilized_at"] = report.stabilized_at ? Json(*report.stabilized_at) : Json(nullptr);
    doc["limit_identity"] = report.limit_identity;
    doc["integral_f"] = to_string(report.integral_f);
    doc["integral_limit_f"] = to_string(report.integral_limit_f);
    doc["plain_identity"] = report.plain_identity;
    Json steps = Json::array();
    for (const CorollaryStep& s : report.steps) {
        Json entry;
        entry["n"] = s.n;
        entry["integral_lambda"] = to_string(s.integral_lambda);
        entry["cap_integral"] = to_string(s.cap_integral);
        entry["full_exceedance"] = s.full_exceedance;
        entry["dominated"] = s.dominated;
        steps.push_back(std::move(entry));
    }
    doc["steps"] = std::move(steps);
    return doc;
}

Json integrated_report_json(const IntegratedBoundReport& report) {
    Json doc;
    doc["kind"] = "integrated-bound";
    doc["N"] = report.N;
    doc["integral"] = to_string(report.integral);
    doc["all_match"] = report.all_match;
    doc["tenfold"] = report.tenfold;
    Json steps = Json::array();
    for (const IntegratedBoundStep& s : report.steps) {
        Json entry;
        entry["m"] = s.m;
        entry["window_total"] = to_string(s.window_total);
        entry["bound"] = to_string(s.bound);
        entry["matches"] = s.matches;
        steps.push_back(std::move(entry));
    }
    doc["steps"] = std::move(steps);
    return doc;
}

Json verification_report_json(const VerificationReport& report) {
    Json doc;
    doc["kind"] = "certificate-verification";
    doc["ok"] = report.ok();
    Json failures = Json::array();
    for (const ClauseFailure& f : report.failures) {
        Json entry;
        entry["clause"] = std::string(1, f.clause);
        entry["detail"] = f.detail;
        failures.push_back(std::move(entry));
    }
    doc["failures"] = std::move(failures);
    return doc;
}

}  // namespace ergo
