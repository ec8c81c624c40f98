#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gapcert/angle.hpp"
#include "gapcert/certify.hpp"

namespace gapcert {

enum class SubspaceMode { EigenvectorSpan, Tilted, Random };

/// Recipe for a reproducible test instance: an explicit spectrum, a subspace
/// construction mode, and a seed. Eigenvalue indices are 1-based ranks in the
/// ascending spectrum.
struct InstanceSpec {
    int n = 0;
    std::vector<double> spectrum;
    SubspaceMode mode = SubspaceMode::EigenvectorSpan;
    std::vector<int> indices;  // ranks spanned (span/tilted modes)
    int subspace_dim = 0;      // random mode only
    double tilt = 0.0;
    std::uint64_t seed = 0;
    double ess_threshold = kInf;
    double invertibility_gap = 1e-8;
};

struct Report {
    InstanceSpec spec;
    std::optional<Certificate> certificate;
    std::optional<AngleReport> angle;
    std::optional<FactorizationReport> factorization;
    double annular_r1 = 0.0;
    double annular_r2 = 0.0;
    bool oracle_confirms = false;
    std::string error;  // nonempty when the instance failed
    double elapsed_seconds = 0.0;
};

struct BatchSummary {
    std::vector<Report> reports;
    int certified = 0;
    int partial = 0;
    int not_certifiable = 0;
    int contradictions = 0;
    int errors = 0;
    bool ok() const { return contradictions == 0; }
};

std::pair<SymmetricOperator, OrthonormalBasis> gen_instance(const InstanceSpec& spec);

Report run_instance(const InstanceSpec& spec, double tol = -1.0);
BatchSummary run_batch(const std::vector<InstanceSpec>& specs, double tol = -1.0);

/// JSON serialization. Certificates use the stable report schema
/// {eta, d, matches:[{k, mu, j, lambda, rel_err}], secondary_bound, verdict,
///  angle:{sin_uv, sin_uw, tan_vw, bound}}; infinities serialize as "inf".
nlohmann::json certificate_to_json(const Certificate& cert,
                                   const std::optional<AngleReport>& angle);
Certificate certificate_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const Report& report);
nlohmann::json spec_to_json(const InstanceSpec& spec);
InstanceSpec spec_from_json(const nlohmann::json& j);

std::string subspace_mode_name(SubspaceMode mode);
SubspaceMode subspace_mode_from_name(const std::string& name);

}  // namespace gapcert
