#include "gapcert/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gapcert/harness.hpp"
#include "gapcert/mmio.hpp"

namespace gapcert {

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitNotCertifiable = 2;
constexpr int kExitInputError = 3;
constexpr int kExitContradiction = 4;

void emit_json(const json& j, const std::string& path) {
    if (path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(path);
        if (!out) throw ParseError(path + ": cannot open file for writing");
        out << j.dump(2) << "\n";
    }
}

void print_certificate_table(const Certificate& cert) {
    std::ostream& os = std::cerr;
    os << "eta              " << format_double(cert.eta) << "\n";
    os << "secondary bound  " << format_double(cert.secondary_bound) << "\n";
    os << "gap              (" << format_double(cert.alpha) << ", " << format_double(cert.beta)
       << ")\n";
    os << "ess threshold d  " << format_double(cert.d) << "\n";
    os << "verdict          " << verdict_name(cert.verdict) << "\n";
    if (!cert.matches.empty()) {
        os << "  k            mu   j        lambda       rel_err\n";
        for (const Match& m : cert.matches) {
            char line[160];
            std::snprintf(line, sizeof(line), "%3d %13.6f %3d %13.6f %13.6e\n", m.k, m.mu, m.j,
                          m.lambda, m.rel_err);
            os << line;
        }
    }
    for (double mu : cert.unmatched)
        os << "unmatched (at/above threshold): " << format_double(mu) << "\n";
}

int run_certify(const std::string& h_path, const std::string& u_path, double ess_threshold,
                bool negative, bool has_gap, double gap_a, double gap_b,
                const std::string& json_path) {
    SymmetricOperator h{read_matrix_market(h_path)};
    OrthonormalBasis u = orthonormalize(read_matrix_market(u_path));
    if (h.dim() != u.ambient_dim())
        throw DimensionMismatch("H and U files have mismatched dimensions");

    EssentialModel ess{ess_threshold};
    Certificate cert;
    if (has_gap) {
        cert = certify_gap(h, u, gap_a, gap_b, ess);
    } else if (negative) {
        cert = certify_negative(h, u, ess);
    } else {
        cert = certify(h, u, ess);
    }

    std::optional<AngleReport> angle;
    if (cert.eta < 1.0 - kCertifyMargin) {
        try {
            angle = angle_bound(make_compression_setup(h, u), diag_off_split(h, u));
        } catch (const NotGraphRepresentable&) {
            // leave the angle section empty
        }
    }

    emit_json(certificate_to_json(cert, angle), json_path);
    print_certificate_table(cert);
    return cert.verdict == Verdict::NotCertifiable ? kExitNotCertifiable : kExitOk;
}

int run_gen(const InstanceSpec& spec, const std::string& out_h, const std::string& out_u) {
    auto [h, u] = gen_instance(spec);
    write_matrix_market_symmetric(out_h, h.matrix());
    write_matrix_market_general(out_u, u.cols());
    std::cerr << "wrote " << out_h << " (" << h.dim() << "x" << h.dim() << ") and " << out_u
              << " (" << u.ambient_dim() << "x" << u.count() << ")\n";
    return kExitOk;
}

int run_batch_cmd(const std::string& spec_path, const std::string& json_path) {
    std::ifstream in(spec_path);
    if (!in) throw ParseError(spec_path + ": cannot open file");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ParseError(spec_path + ": " + e.what());
    }
    std::vector<InstanceSpec> specs;
    for (const json& j : doc.at("instances")) specs.push_back(spec_from_json(j));
    const double tol = doc.contains("tol") ? doc.at("tol").get<double>() : -1.0;

    BatchSummary summary = run_batch(specs, tol);
    json reports = json::array();
    for (const Report& report : summary.reports) reports.push_back(report_to_json(report));
    json out{{"reports", reports},
             {"summary",
              {{"certified", summary.certified},
               {"partial", summary.partial},
               {"not_certifiable", summary.not_certifiable},
               {"contradictions", summary.contradictions},
               {"errors", summary.errors}}}};
    emit_json(out, json_path);
    std::cerr << "batch: " << summary.certified << " certified, " << summary.partial
              << " partial, " << summary.not_certifiable << " not certifiable, "
              << summary.contradictions << " contradictions, " << summary.errors << " errors\n";
    return summary.ok() ? kExitOk : kExitContradiction;
}

int run_selftest();

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Relative eigenvalue certification for subspace compressions of "
                 "indefinite symmetric matrices"};
    app.require_subcommand(1);

    // certify
    std::string h_path, u_path, json_path;
    double ess_threshold = kInf;
    bool negative = false;
    std::vector<double> gap_edges;
    double tol = 1e-10;
    auto* certify_cmd = app.add_subcommand("certify", "Certify eigenvalue matches for (H, U)");
    certify_cmd->add_option("H", h_path, "Matrix Market file for H (symmetric)")->required();
    certify_cmd->add_option("U", u_path, "Matrix Market file for the U basis columns")->required();
    certify_cmd->add_option("--ess-threshold", ess_threshold,
                            "declared essential threshold d (default inf)");
    certify_cmd->add_flag("--negative", negative, "certify the negative spectrum instead");
    certify_cmd->add_option("--gap", gap_edges, "gap edges ALPHA BETA not containing zero")
        ->expected(2);
    certify_cmd->add_option("--tol", tol, "base relative tolerance (default 1e-10)");
    certify_cmd->add_option("--json", json_path, "write the JSON report here instead of stdout");

    // gen
    InstanceSpec spec;
    std::string mode_name = "eigenvector-span";
    std::string out_h = "H.mtx", out_u = "U.mtx";
    auto* gen_cmd = app.add_subcommand("gen", "Generate a reproducible instance (H, U)");
    gen_cmd->add_option("--n", spec.n, "dimension")->required();
    gen_cmd->add_option("--spectrum", spec.spectrum, "eigenvalues of H")->required();
    gen_cmd->add_option("--mode", mode_name, "eigenvector-span | tilted | random");
    gen_cmd->add_option("--indices", spec.indices, "1-based eigenvalue ranks spanned");
    gen_cmd->add_option("--subspace-dim", spec.subspace_dim, "dimension for random mode");
    gen_cmd->add_option("--tilt", spec.tilt, "tilt angle for tilted mode");
    gen_cmd->add_option("--seed", spec.seed, "64-bit seed");
    gen_cmd->add_option("--ess-threshold", spec.ess_threshold, "declared essential threshold");
    gen_cmd->add_option("--out-h", out_h, "output path for H");
    gen_cmd->add_option("--out-u", out_u, "output path for U");

    // batch
    std::string batch_path, batch_json;
    auto* batch_cmd = app.add_subcommand("batch", "Run a batch of instances from a JSON spec");
    batch_cmd->add_option("spec", batch_path, "JSON file with {instances:[...], tol}")->required();
    batch_cmd->add_option("--json", batch_json, "write the JSON report here instead of stdout");

    auto* selftest_cmd = app.add_subcommand("selftest", "Run the built-in invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        set_tol_base(tol);
        if (certify_cmd->parsed()) {
            return run_certify(h_path, u_path, ess_threshold, negative, !gap_edges.empty(),
                               gap_edges.empty() ? 0.0 : gap_edges[0],
                               gap_edges.empty() ? 0.0 : gap_edges[1], json_path);
        }
        if (gen_cmd->parsed()) {
            spec.mode = subspace_mode_from_name(mode_name);
            return run_gen(spec, out_h, out_u);
        }
        if (batch_cmd->parsed()) return run_batch_cmd(batch_path, batch_json);
        if (selftest_cmd->parsed()) return run_selftest();
    } catch (const InternalContradiction& e) {
        std::cerr << "internal contradiction: " << e.what() << "\n";
        return kExitContradiction;
    } catch (const GapConditionFailed& e) {
        std::cerr << "not certifiable: " << e.what() << "\n";
        return kExitNotCertifiable;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}

namespace {

int run_selftest() {
    int failures = 0;
    auto check = [&failures](const char* name, bool ok) {
        std::cerr << (ok ? "PASS " : "FAIL ") << name << "\n";
        if (!ok) ++failures;
    };

    // Closed-form 2x2 case: H = diag(1,3), U spanned by (cos t, sin t), t = 0.2.
    {
        const double t = 0.2;
        Matrix hm(2, 2);
        hm << 1, 0, 0, 3;
        Matrix uc(2, 1);
        uc << std::cos(t), std::sin(t);
        SymmetricOperator h(hm);
        OrthonormalBasis u(uc, 1e-12);
        Certificate cert = certify(h, u);
        check("2x2 eta = sin(2t)", std::abs(cert.eta - std::sin(2 * t)) < 1e-12);
        check("2x2 two matches", cert.matches.size() == 2);
        check("2x2 certified", cert.verdict == Verdict::Certified);
        AngleReport angle = angle_bound(make_compression_setup(h, u), diag_off_split(h, u));
        check("2x2 angle bound covers eta", angle.eta <= angle.bound + 1e-12);
    }

    // Boundary family: eta = 1 must never certify.
    {
        Matrix hm(2, 2);
        hm << -1, 0, 0, 1;
        Matrix uc(2, 1);
        uc << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
        Certificate cert = certify(SymmetricOperator(hm), OrthonormalBasis(uc, 1e-12));
        check("eta=1 not certifiable", cert.verdict == Verdict::NotCertifiable);
    }

    // Random tilted suite.
    {
        bool all_ok = true;
        for (std::uint64_t seed = 1; seed <= 50; ++seed) {
            InstanceSpec spec;
            spec.n = 10;
            spec.spectrum = {-5, -3, -1, 1, 1.5, 2, 3, 4, 6, 9};
            spec.mode = SubspaceMode::Tilted;
            spec.indices = {4, 6, 8};
            spec.tilt = 0.05;
            spec.seed = seed;
            Report report = run_instance(spec);
            if (!report.error.empty() || !report.certificate ||
                report.certificate->verdict != Verdict::Certified || !report.oracle_confirms ||
                !report.angle || report.angle->eta > report.angle->bound + 1e-9) {
                all_ok = false;
                break;
            }
        }
        check("50 tilted instances certified and oracle-confirmed", all_ok);
    }

    std::cerr << (failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
    return failures == 0 ? kExitOk : kExitContradiction;
}

}  // namespace

}  // namespace gapcert
