#include "gapcert/certify.hpp"

#include <cmath>

namespace gapcert {

namespace {

struct GapEdges {
    double alpha;  // largest eigenvalue of H below zero, -inf if none
    double beta;   // smallest eigenvalue of H above zero, +inf if none
};

GapEdges zero_gap_edges(const SymmetricOperator& h) {
    GapEdges edges{-kInf, kInf};
    for (int i = 0; i < h.dim(); ++i) {
        const double lam = h.eigenvalues()(i);
        if (lam < 0.0) edges.alpha = std::max(edges.alpha, lam);
        if (lam > 0.0) edges.beta = std::min(edges.beta, lam);
    }
    return edges;
}

/// Shared matching core. Pairs eigenvalues of H_diag above threshold_low
/// with variational values of H above lambda_threshold, rank by rank, and
/// verifies the relative bound eta per match. Compressed eigenvalues at or
/// above mu_cutoff are reported unmatched.
void run_matching(Certificate& cert, const SymmetricOperator& h, const OperatorSplit& split,
                  double threshold_low, double lambda_threshold, double mu_floor,
                  double mu_cutoff, double tol) {
    std::vector<double> hd_vals;
    for (int i = 0; i < split.H_diag.dim(); ++i)
        if (split.H_diag.eigenvalues()(i) > threshold_low)
            hd_vals.push_back(split.H_diag.eigenvalues()(i));
    const SpectralCut lam = variational_values(h, lambda_threshold);
    if (static_cast<int>(hd_vals.size()) != lam.count())
        throw InternalContradiction(
            "certify: eigenvalue counts of H above alpha and of H_diag above the mapped "
            "threshold differ");

    const double btol = tol;
    for (std::size_t i = 0; i < hd_vals.size(); ++i) {
        const double mu = hd_vals[i];
        if (std::isfinite(mu_cutoff) && mu >= mu_cutoff - btol) {
            cert.unmatched.push_back(mu);
            continue;
        }
        if (mu <= mu_floor + btol) {
            // The bound is strict; no guarantee at the boundary itself.
            cert.unmatched.push_back(mu);
            continue;
        }
        Match match;
        match.k = static_cast<int>(cert.matches.size()) + 1;
        match.mu = mu;
        match.j = static_cast<int>(i) + 1;
        match.lambda = lam.values[i];
        match.rel_err = std::abs(match.lambda - mu) / std::abs(match.lambda);
        if (std::abs(match.lambda - mu) > cert.eta * std::abs(match.lambda) + tol)
            throw InternalContradiction("certify: relative bound violated beyond tolerance");
        cert.matches.push_back(match);
    }
    cert.verdict = cert.unmatched.empty() ? Verdict::Certified : Verdict::Partial;
}

}  // namespace

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Certified: return "Certified";
        case Verdict::NotCertifiable: return "NotCertifiable";
        case Verdict::Partial: return "Partial";
    }
    return "?";
}

Certificate certify(const SymmetricOperator& h, const OrthonormalBasis& u,
                    const EssentialModel& ess, double tol) {
    if (!h.invertible())
        throw SingularOperator("certify: H fails the invertibility cutoff");
    if (tol < 0.0) tol = tol_for(h.norm());

    OperatorSplit split = diag_off_split(h, u);
    const GapEdges edges = zero_gap_edges(h);

    Certificate cert;
    cert.eta = split.eta;
    cert.d = ess.d;
    cert.alpha = edges.alpha;
    cert.beta = edges.beta;
    if (cert.eta >= 1.0 - kCertifyMargin) {
        cert.verdict = Verdict::NotCertifiable;
        cert.secondary_bound = kInf;
        return cert;
    }
    cert.secondary_bound = cert.eta / (1.0 - cert.eta);

    SymmetricOperator m = compress(h, u);
    if (m.dim() > 0 && m.min_abs_eigenvalue() <= tol)
        throw InternalContradiction("certify: eta < 1 but the compression M is numerically singular");

    const double threshold_low =
        std::isfinite(edges.alpha) ? (1.0 - cert.eta) * edges.alpha : -kInf;
    const double mu_cutoff = std::isfinite(ess.d) ? (1.0 - cert.eta) * ess.d : kInf;
    run_matching(cert, h, split, threshold_low, edges.alpha, 0.0, mu_cutoff, tol);
    return cert;
}

std::vector<std::pair<int, int>> match_indices(const SymmetricOperator& h,
                                               const OrthonormalBasis& u,
                                               const OperatorSplit& split,
                                               const EssentialModel& ess, double alpha) {
    if (split.eta >= 1.0 - kCertifyMargin)
        throw HypothesisViolated("match_indices: eta >= 1");
    const double threshold_low = std::isfinite(alpha) ? (1.0 - split.eta) * alpha : -kInf;
    const double mu_cutoff = std::isfinite(ess.d) ? (1.0 - split.eta) * ess.d : kInf;
    std::vector<std::pair<int, int>> pairs;
    int rank = 0;
    int k = 0;
    for (int i = 0; i < split.H_diag.dim(); ++i) {
        const double mu = split.H_diag.eigenvalues()(i);
        if (mu <= threshold_low) continue;
        ++rank;  // position among eigenvalues of H_diag above the threshold
        if (mu > 0.0 && mu < mu_cutoff) pairs.emplace_back(++k, rank);
    }
    (void)h;
    (void)u;
    return pairs;
}

OracleMatch oracle_match(const std::vector<double>& mus, const std::vector<double>& lambdas,
                         double eta) {
    OracleMatch result{true, {}};
    std::size_t j = 0;
    for (const double mu : mus) {
        const double lo = mu / (1.0 + eta);
        const double hi = eta < 1.0 ? mu / (1.0 - eta) : kInf;
        while (j < lambdas.size() && lambdas[j] < lo) ++j;
        if (j >= lambdas.size() || lambdas[j] > hi) {
            result.feasible = false;
            result.witness.clear();
            return result;
        }
        result.witness.push_back(static_cast<int>(j) + 1);
        ++j;
    }
    return result;
}

Certificate certify_negative(const SymmetricOperator& h, const OrthonormalBasis& u,
                             const EssentialModel& ess_neg) {
    SymmetricOperator negated(-h.matrix());
    Certificate cert = certify(negated, u, ess_neg);
    Certificate mirrored = cert;
    mirrored.alpha = std::isfinite(cert.beta) ? -cert.beta : -kInf;
    mirrored.beta = std::isfinite(cert.alpha) ? -cert.alpha : kInf;
    for (std::size_t i = 0; i < cert.matches.size(); ++i) {
        mirrored.matches[i].mu = -cert.matches[i].mu;
        mirrored.matches[i].lambda = -cert.matches[i].lambda;
    }
    for (double& mu : mirrored.unmatched) mu = -mu;
    return mirrored;
}

Certificate certify_gap(const SymmetricOperator& h, const OrthonormalBasis& u, double alpha_t,
                        double beta_t, const EssentialModel& ess) {
    if (!(alpha_t < beta_t))
        throw InvalidSpec("certify_gap: alpha must be below beta");
    if (!h.invertible())
        throw SingularOperator("certify_gap: H fails the invertibility cutoff");
    for (int i = 0; i < h.dim(); ++i) {
        const double lam = h.eigenvalues()(i);
        if (lam > alpha_t && lam < beta_t)
            throw WindowNotInResolvent("certify_gap: eigenvalue " + std::to_string(lam) +
                                       " of H lies inside the declared gap");
    }
    const double tol = tol_for(h.norm());
    OperatorSplit split = diag_off_split(h, u);

    Certificate cert;
    cert.eta = split.eta;
    cert.d = ess.d;
    cert.alpha = alpha_t;
    cert.beta = beta_t;
    const double required = (beta_t - alpha_t) / (std::abs(alpha_t) + std::abs(beta_t));
    if (cert.eta >= required - kCertifyMargin * required) {
        throw GapConditionFailed("certify_gap: eta = " + std::to_string(cert.eta) +
                                 " does not satisfy eta < (beta-alpha)/(|alpha|+|beta|) = " +
                                 std::to_string(required));
    }
    cert.secondary_bound = cert.eta < 1.0 ? cert.eta / (1.0 - cert.eta) : kInf;

    const double threshold_low = alpha_t + cert.eta * std::abs(alpha_t);
    const double mu_cutoff =
        std::isfinite(ess.d) ? ess.d - cert.eta * std::abs(ess.d) : kInf;
    run_matching(cert, h, split, threshold_low, alpha_t, threshold_low, mu_cutoff, tol);
    return cert;
}

}  // namespace gapcert
