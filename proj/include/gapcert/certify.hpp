#pragma once

#include <vector>

#include "gapcert/operator_split.hpp"

namespace gapcert {

/// Declared threshold above which positive eigenvalues of H are treated as
/// the essential cluster; +inf means all positive eigenvalues are accessible.
struct EssentialModel {
    double d = kInf;
};

enum class Verdict { Certified, NotCertifiable, Partial };

struct Match {
    int k;           // 1-based index into the mu list
    double mu;
    int j;           // 1-based index into the variational values of H
    double lambda;
    double rel_err;  // |lambda - mu| / |lambda|
};

struct Certificate {
    double eta = 0.0;
    double d = kInf;
    double alpha = -kInf;  // lower edge of the spectral gap used
    double beta = kInf;    // upper edge
    std::vector<Match> matches;
    std::vector<double> unmatched;  // compressed eigenvalues at/above the threshold
    double secondary_bound = 0.0;   // eta / (1 - eta)
    Verdict verdict = Verdict::NotCertifiable;
};

/// Margin below 1 that eta must clear before a certificate is issued.
inline constexpr double kCertifyMargin = 1e-8;

/// Certificate matching the spectrum of the diagonal part of H
/// (whose U block is the compression M) against eigenvalues of H in the gap
/// around zero, with relative error at most eta.
Certificate certify(const SymmetricOperator& h, const OrthonormalBasis& u,
                    const EssentialModel& ess = {}, double tol = -1.0);

/// Index construction: the k-th eigenvalue of H_diag in (0, (1-eta)d) is
/// paired with the variational value of H above alpha of the same rank.
std::vector<std::pair<int, int>> match_indices(const SymmetricOperator& h,
                                               const OrthonormalBasis& u,
                                               const OperatorSplit& split,
                                               const EssentialModel& ess, double alpha);

struct OracleMatch {
    bool feasible;
    std::vector<int> witness;  // 1-based indices into lambdas, strictly increasing
};

/// Independent greedy check that strictly increasing indices exist with
/// lambda_j in [mu_k/(1+eta), mu_k/(1-eta)] for each k. Greedy smallest
/// admissible index is optimal for sorted interval systems.
OracleMatch oracle_match(const std::vector<double>& mus, const std::vector<double>& lambdas,
                         double eta);

/// Mirror certificate for the negative spectrum: certify(-H, U) with every
/// reported eigenvalue negated back.
Certificate certify_negative(const SymmetricOperator& h, const OrthonormalBasis& u,
                             const EssentialModel& ess_neg = {});

/// Certificate for a spectral gap (alpha_t, beta_t) not containing zero;
/// requires the stronger condition eta < (beta_t - alpha_t)/(|alpha_t| + |beta_t|).
Certificate certify_gap(const SymmetricOperator& h, const OrthonormalBasis& u, double alpha_t,
                        double beta_t, const EssentialModel& ess = {});

const char* verdict_name(Verdict v);

}  // namespace gapcert
