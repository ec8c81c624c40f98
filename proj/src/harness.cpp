#include "gapcert/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <set>

#include <nlohmann/json.hpp>

namespace gapcert {

namespace {

using nlohmann::json;

json encode_double(double v) {
    if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
    return json(v);
}

double decode_double(const json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf") return kInf;
        if (s == "-inf") return -kInf;
        throw ParseError("unexpected numeric string '" + s + "'");
    }
    return j.get<double>();
}

Matrix gaussian_matrix(int rows, int cols, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix g(rows, cols);
    for (Eigen::Index c = 0; c < g.size(); ++c) g(c) = gauss(rng);
    return g;
}

Matrix random_orthogonal(int n, std::mt19937_64& rng) {
    Matrix g = gaussian_matrix(n, n, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR();
    for (int i = 0; i < n; ++i)
        if (r(i, i) < 0.0) q.col(i) = -q.col(i);
    return q;
}

Vector random_complement_direction(const Matrix& span, std::mt19937_64& rng) {
    const int n = static_cast<int>(span.rows());
    for (int attempt = 0; attempt < 64; ++attempt) {
        Vector g = gaussian_matrix(n, 1, rng);
        g -= span * (span.transpose() * g);
        const double norm = g.norm();
        if (norm > 1e-8) return g / norm;
    }
    throw InvalidSpec("gen_instance: cannot draw a direction in the orthogonal complement");
}

void validate(const InstanceSpec& spec) {
    if (spec.n <= 0) throw InvalidSpec("gen_instance: n must be positive");
    if (static_cast<int>(spec.spectrum.size()) != spec.n)
        throw InvalidSpec("gen_instance: spectrum size must equal n");
    for (double lam : spec.spectrum)
        if (std::abs(lam) < spec.invertibility_gap)
            throw InvalidSpec("gen_instance: spectrum entry within the invertibility gap of zero");
    if (spec.tilt < 0.0) throw InvalidSpec("gen_instance: tilt must be nonnegative");
    if (spec.mode == SubspaceMode::Random) {
        if (spec.subspace_dim < 0 || spec.subspace_dim > spec.n)
            throw InvalidSpec("gen_instance: subspace_dim out of range");
    } else {
        std::set<int> seen;
        for (int idx : spec.indices) {
            if (idx < 1 || idx > spec.n)
                throw InvalidSpec("gen_instance: eigenvalue index out of range");
            if (!seen.insert(idx).second)
                throw InvalidSpec("gen_instance: repeated eigenvalue index");
        }
    }
}

}  // namespace

std::pair<SymmetricOperator, OrthonormalBasis> gen_instance(const InstanceSpec& spec) {
    validate(spec);
    std::mt19937_64 rng(spec.seed);
    std::vector<double> sorted = spec.spectrum;
    std::sort(sorted.begin(), sorted.end());
    Vector diag = Eigen::Map<const Vector>(sorted.data(), spec.n);
    const Matrix q = random_orthogonal(spec.n, rng);
    SymmetricOperator h(q * diag.asDiagonal() * q.transpose());

    if (spec.mode == SubspaceMode::Random) {
        if (spec.subspace_dim == 0) return {std::move(h), OrthonormalBasis(spec.n)};
        OrthonormalBasis u = orthonormalize(gaussian_matrix(spec.n, spec.subspace_dim, rng));
        return {std::move(h), std::move(u)};
    }

    // Span of selected eigenvectors of the assembled H (ranks are 1-based in
    // the ascending spectrum), exactly invariant up to rounding.
    const int k = static_cast<int>(spec.indices.size());
    Matrix span(spec.n, k);
    for (int c = 0; c < k; ++c) span.col(c) = h.eigenvectors().col(spec.indices[c] - 1);

    if (spec.mode == SubspaceMode::EigenvectorSpan || spec.tilt == 0.0 || k == 0) {
        if (k == 0) return {std::move(h), OrthonormalBasis(spec.n)};
        return {std::move(h), OrthonormalBasis(std::move(span), 1e-8)};
    }

    // Tilted: rotate each basis vector toward a random unit direction in the
    // orthogonal complement of the span by the given angle (a two-column
    // Givens rotation per vector).
    Matrix tilted(spec.n, k);
    for (int c = 0; c < k; ++c) {
        const Vector r = random_complement_direction(span, rng);
        tilted.col(c) = std::cos(spec.tilt) * span.col(c) + std::sin(spec.tilt) * r;
    }
    return {std::move(h), orthonormalize(tilted)};
}

Report run_instance(const InstanceSpec& spec, double tol) {
    Report report;
    report.spec = spec;
    const auto start = std::chrono::steady_clock::now();
    try {
        auto [h, u] = gen_instance(spec);
        EssentialModel ess{spec.ess_threshold};
        report.certificate = certify(h, u, ess, tol);

        if (report.certificate->eta < 1.0 - kCertifyMargin) {
            CompressionSetup setup = make_compression_setup(h, u);
            OperatorSplit split = diag_off_split(h, u);
            report.angle = angle_bound(setup, split);
            report.factorization = verify_factorization(h, u);
            ObliqueProjector p = oblique_projection(h, u);
            GraphRotation g = graph_tangent(setup.V, setup.W, p);
            std::tie(report.annular_r1, report.annular_r2) = annular_residuals(setup.V, setup.W, p, g);

            std::vector<double> mus;
            for (const Match& match : report.certificate->matches) mus.push_back(match.mu);
            const std::vector<double> lambdas =
                variational_values(h, report.certificate->alpha).values;
            report.oracle_confirms =
                oracle_match(mus, lambdas, report.certificate->eta).feasible;
        }
    } catch (const Error& e) {
        report.error = e.what();
        if (dynamic_cast<const InternalContradiction*>(&e) != nullptr)
            report.error = std::string("InternalContradiction: ") + e.what();
    }
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

BatchSummary run_batch(const std::vector<InstanceSpec>& specs, double tol) {
    BatchSummary summary;
    for (const InstanceSpec& spec : specs) {
        Report report = run_instance(spec, tol);
        if (!report.error.empty()) {
            if (report.error.rfind("InternalContradiction", 0) == 0)
                ++summary.contradictions;
            else
                ++summary.errors;
        } else if (report.certificate) {
            switch (report.certificate->verdict) {
                case Verdict::Certified: ++summary.certified; break;
                case Verdict::Partial: ++summary.partial; break;
                case Verdict::NotCertifiable: ++summary.not_certifiable; break;
            }
        }
        summary.reports.push_back(std::move(report));
    }
    return summary;
}

json certificate_to_json(const Certificate& cert, const std::optional<AngleReport>& angle) {
    json matches = json::array();
    for (const Match& m : cert.matches)
        matches.push_back({{"k", m.k},
                           {"mu", m.mu},
                           {"j", m.j},
                           {"lambda", m.lambda},
                           {"rel_err", m.rel_err}});
    json unmatched = json::array();
    for (double mu : cert.unmatched) unmatched.push_back(mu);
    json j{{"eta", cert.eta},
           {"d", encode_double(cert.d)},
           {"alpha", encode_double(cert.alpha)},
           {"beta", encode_double(cert.beta)},
           {"matches", matches},
           {"unmatched", unmatched},
           {"secondary_bound", encode_double(cert.secondary_bound)},
           {"verdict", verdict_name(cert.verdict)}};
    if (angle) {
        j["angle"] = {{"sin_uv", angle->sin_UV},
                      {"sin_uw", angle->sin_UW},
                      {"sin_vw", angle->sin_VW},
                      {"tan_vw", angle->tan_VW},
                      {"bound", angle->bound}};
    } else {
        j["angle"] = nullptr;
    }
    return j;
}

Certificate certificate_from_json(const json& j) {
    Certificate cert;
    cert.eta = j.at("eta").get<double>();
    cert.d = decode_double(j.at("d"));
    cert.alpha = decode_double(j.at("alpha"));
    cert.beta = decode_double(j.at("beta"));
    cert.secondary_bound = decode_double(j.at("secondary_bound"));
    const std::string verdict = j.at("verdict").get<std::string>();
    if (verdict == "Certified")
        cert.verdict = Verdict::Certified;
    else if (verdict == "Partial")
        cert.verdict = Verdict::Partial;
    else if (verdict == "NotCertifiable")
        cert.verdict = Verdict::NotCertifiable;
    else
        throw ParseError("unknown verdict '" + verdict + "'");
    for (const json& m : j.at("matches")) {
        cert.matches.push_back(Match{m.at("k").get<int>(), m.at("mu").get<double>(),
                                     m.at("j").get<int>(), m.at("lambda").get<double>(),
                                     m.at("rel_err").get<double>()});
    }
    for (const json& mu : j.at("unmatched")) cert.unmatched.push_back(mu.get<double>());
    return cert;
}

std::string subspace_mode_name(SubspaceMode mode) {
    switch (mode) {
        case SubspaceMode::EigenvectorSpan: return "eigenvector-span";
        case SubspaceMode::Tilted: return "tilted";
        case SubspaceMode::Random: return "random";
    }
    return "?";
}

SubspaceMode subspace_mode_from_name(const std::string& name) {
    if (name == "eigenvector-span") return SubspaceMode::EigenvectorSpan;
    if (name == "tilted") return SubspaceMode::Tilted;
    if (name == "random") return SubspaceMode::Random;
    throw InvalidSpec("unknown subspace mode '" + name + "'");
}

json spec_to_json(const InstanceSpec& spec) {
    return json{{"n", spec.n},
                {"spectrum", spec.spectrum},
                {"mode", subspace_mode_name(spec.mode)},
                {"indices", spec.indices},
                {"subspace_dim", spec.subspace_dim},
                {"tilt", spec.tilt},
                {"seed", spec.seed},
                {"ess_threshold", encode_double(spec.ess_threshold)},
                {"invertibility_gap", spec.invertibility_gap}};
}

InstanceSpec spec_from_json(const json& j) {
    InstanceSpec spec;
    spec.n = j.at("n").get<int>();
    spec.spectrum = j.at("spectrum").get<std::vector<double>>();
    spec.mode = subspace_mode_from_name(j.at("mode").get<std::string>());
    if (j.contains("indices")) spec.indices = j.at("indices").get<std::vector<int>>();
    if (j.contains("subspace_dim")) spec.subspace_dim = j.at("subspace_dim").get<int>();
    if (j.contains("tilt")) spec.tilt = j.at("tilt").get<double>();
    if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("ess_threshold")) spec.ess_threshold = decode_double(j.at("ess_threshold"));
    if (j.contains("invertibility_gap"))
        spec.invertibility_gap = j.at("invertibility_gap").get<double>();
    return spec;
}

json report_to_json(const Report& report) {
    json j{{"spec", spec_to_json(report.spec)},
           {"oracle_confirms", report.oracle_confirms},
           {"annular", {report.annular_r1, report.annular_r2}},
           {"error", report.error},
           {"elapsed_seconds", report.elapsed_seconds}};
    j["certificate"] =
        report.certificate ? certificate_to_json(*report.certificate, report.angle) : json(nullptr);
    if (report.factorization) {
        j["factorization"] = {
            {"factorization_residual", report.factorization->factorization_residual},
            {"norm_identity_residual", report.factorization->norm_identity_residual}};
    } else {
        j["factorization"] = nullptr;
    }
    return j;
}

}  // namespace gapcert
