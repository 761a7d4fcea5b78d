// JSON system descriptions, certificate files, CSV emission. All output is
// deterministic: fixed key order, rationals as "p/q" strings, doubles as
// shortest round-trip decimals.
#pragma once

#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "ergo/averages.hpp"
#include "ergo/decomposition.hpp"
#include "ergo/finite_system.hpp"
#include "ergo/maximal_theorem.hpp"
#include "ergo/sampled_system.hpp"

namespace ergo {

using Json = nlohmann::ordered_json;

struct FiniteCase {
    FiniteSystem system;
    Observable f;
    InvariantFunction lambda;
};

struct SampledCase {
    SampledSystem system;
};

using LoadedSystem = std::variant<FiniteCase, SampledCase>;

// {"type":"finite","map":[...],"cycle_weights":["1/3",...],"f":["3",...],
//  "lambda":["0",...]} with lambda optional (defaults to 0 on every cycle);
// {"type":"rotation","alpha":"golden"|"0.25","x0":0.0};
// {"type":"bernoulli_shift","p":0.5,"seed":42};
// {"type":"markov_shift","transition":[[...]],"stationary":[...],"seed":7}.
// Unknown keys are rejected.
LoadedSystem load_system_file(const std::string& path);
LoadedSystem system_from_json(const Json& doc, const std::string& context);

Json finite_case_json(const FiniteCase& c);

// Fuzz repro file: the offending system plus free-form annotations nested
// under a "context" field, so the file still loads as a plain system.
void save_finite_case(const std::string& path, const FiniteCase& c, const Json& extra);

void save_json(const std::string& path, const Json& doc);
Json load_json(const std::string& path);
void save_text(const std::string& path, const std::string& body);

// Certificates store the window, the block structure, and which regime and
// orbit start produced them, so the verifier CLI can rebuild the input.
void save_certificate(const std::string& path, const FiniteCertificate& cert, int x);
void save_certificate(const std::string& path, const SampledCertificate& cert);

struct StoredCertificate {
    std::string regime;  // "finite" | "sampled"
    int x = 0;           // orbit start, finite regime only
    std::variant<FiniteCertificate, SampledCertificate> cert;
};
StoredCertificate load_certificate(const std::string& path);

// CSV schemas, versioned in the header comment line.
std::string birkhoff_csv(const BirkhoffProfile& profile);
std::string maximal_csv(const MaximalProfile& profile);
std::string converge_csv(const std::vector<std::size_t>& ks, const std::vector<double>& averages,
                         double limit);

Json sweep_report_json(const TheoremSweep& sweep);
Json truncation_report_json(const TruncationReport& report);
Json corollary_report_json(const CorollaryReport& report);
Json integrated_report_json(const IntegratedBoundReport& report);
Json verification_report_json(const VerificationReport& report);

}  // namespace ergo
