#include "gapcert/gap.hpp"

#include <cmath>
#include <random>

namespace gapcert {

namespace {

SymmetricOperator apply_to_spectrum(const SymmetricOperator& a, auto&& f) {
    Vector mapped = a.eigenvalues().unaryExpr(f);
    return SymmetricOperator(a.eigenvectors() * mapped.asDiagonal() * a.eigenvectors().transpose());
}

Matrix relative_weight(const SymmetricOperator& a, const RelativeBoundParams& p) {
    // a I + b |A| via the cached eigendecomposition
    Vector w = a.eigenvalues().cwiseAbs() * p.b;
    w.array() += p.a;
    return a.eigenvectors() * w.asDiagonal() * a.eigenvectors().transpose();
}

Vector random_unit_vector(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector x(n);
    for (int i = 0; i < n; ++i) x(i) = gauss(rng);
    return x / x.norm();
}

double sup_on_joined_subspace(const SymmetricOperator& t, const Matrix& m_cols,
                              const Matrix& d_cols) {
    Matrix joined(t.dim(), m_cols.cols() + d_cols.cols());
    joined.leftCols(m_cols.cols()) = m_cols;
    joined.rightCols(d_cols.cols()) = d_cols;
    OrthonormalBasis s = orthonormalize(joined);
    SymmetricOperator compressed(s.cols().transpose() * t.matrix() * s.cols());
    return compressed.eigenvalues()(compressed.dim() - 1);
}

}  // namespace

SymmetricOperator apply_f_plus(const SymmetricOperator& a, const RelativeBoundParams& p) {
    return apply_to_spectrum(a, [&p](double t) { return p.f_plus(t); });
}

SymmetricOperator apply_f_minus(const SymmetricOperator& a, const RelativeBoundParams& p) {
    return apply_to_spectrum(a, [&p](double t) { return p.f_minus(t); });
}

bool relbound_check(const SymmetricOperator& a, const SymmetricOperator& v,
                    const RelativeBoundParams& p) {
    if (a.dim() != v.dim())
        throw DimensionMismatch("relbound_check: operator dimensions disagree");
    const double min_weight = p.a + p.b * a.min_abs_eigenvalue();
    if (min_weight <= tol_for(a.norm()))
        throw DegenerateBound("relbound_check: a + b min|lambda(A)| is numerically zero");
    SymmetricOperator a1(relative_weight(a, p));
    const Matrix ratio = v.matrix() * a1.inverse_matrix();
    return operator_norm(ratio) <= 1.0 + tol_for(1.0);
}

GapWindow guaranteed_interval(double alpha, double beta, const RelativeBoundParams& p) {
    const double needed = 2.0 * p.a + p.b * (std::abs(alpha) + std::abs(beta));
    if (!(beta - alpha > needed))
        throw HypothesisViolated("guaranteed_interval: beta - alpha = " +
                                 std::to_string(beta - alpha) + " does not exceed 2a + b(|alpha|+|beta|) = " +
                                 std::to_string(needed));
    return GapWindow{alpha, beta, p.f_plus(alpha), p.f_minus(beta)};
}

std::vector<PerturbedPair> perturbed_compare(const SymmetricOperator& a,
                                             const SymmetricOperator& v,
                                             const RelativeBoundParams& p,
                                             const GapWindow& window) {
    if (!relbound_check(a, v, p))
        throw HypothesisViolated("perturbed_compare: ||Vx|| <= ||A_1 x|| fails");
    for (int i = 0; i < a.dim(); ++i) {
        const double lam = a.eigenvalues()(i);
        if (lam > window.alpha && lam < window.beta)
            throw WindowNotInResolvent("perturbed_compare: eigenvalue " + std::to_string(lam) +
                                       " of A lies inside (alpha, beta)");
    }
    SymmetricOperator b(a.matrix() + v.matrix());
    SpectralCut cut_a = variational_values(a, window.alpha);
    SpectralCut cut_b = variational_values(b, window.mapped_low);
    if (cut_a.count() != cut_b.count())
        throw InternalContradiction("perturbed_compare: eigenvalue counts above alpha / f_+(alpha) differ");
    for (int i = 0; i < b.dim(); ++i) {
        const double lam = b.eigenvalues()(i);
        if (lam > window.mapped_low && lam < window.mapped_high)
            throw InternalContradiction("perturbed_compare: eigenvalue of B inside the mapped gap");
    }
    const double tol = tol_for(std::max(a.norm(), b.norm()));
    std::vector<PerturbedPair> pairs;
    pairs.reserve(cut_a.values.size());
    for (std::size_t j = 0; j < cut_a.values.size(); ++j) {
        PerturbedPair pair;
        pair.lambda_a = cut_a.values[j];
        pair.lambda_b = cut_b.values[j];
        pair.allowed = p.a + p.b * std::abs(pair.lambda_a);
        pair.ok = std::abs(pair.lambda_a - pair.lambda_b) <= pair.allowed + tol;
        pairs.push_back(pair);
    }
    return pairs;
}

double form_sandwich_check(const SymmetricOperator& a, const SymmetricOperator& v,
                           const RelativeBoundParams& p, int samples, std::uint64_t seed) {
    const Matrix a1 = relative_weight(a, p);
    const Matrix b = a.matrix() + v.matrix();
    const double tol = tol_for(std::max(a.norm(), v.norm()));
    std::mt19937_64 rng(seed);
    double worst = -kInf;
    for (int s = 0; s < samples; ++s) {
        const Vector x = random_unit_vector(a.dim(), rng);
        const double qa = x.dot(a.matrix() * x);
        const double q1 = x.dot(a1 * x);
        const double qb = x.dot(b * x);
        worst = std::max(worst, (qa - q1) - qb - tol);
        worst = std::max(worst, qb - (qa + q1) - tol);
    }
    SymmetricOperator lower(a1 - v.matrix());
    SymmetricOperator upper(a1 + v.matrix());
    worst = std::max(worst, -lower.eigenvalues()(0) - tol);
    worst = std::max(worst, -upper.eigenvalues()(0) - tol);
    return worst;
}

GapConditionReport gap_condition(const SymmetricOperator& t, const OrthonormalBasis& lambda) {
    if (t.dim() != lambda.ambient_dim())
        throw DimensionMismatch("gap_condition: operator and projector dimensions disagree");
    GapConditionReport report;
    OrthonormalBasis d_minus = lambda.complement();
    if (d_minus.count() == 0) {
        report.nu = -kInf;
    } else {
        SymmetricOperator tm(d_minus.cols().transpose() * t.matrix() * d_minus.cols());
        report.nu = tm.eigenvalues()(tm.dim() - 1);
    }
    if (lambda.count() == 0) {
        report.nu_prime = kInf;
    } else {
        SymmetricOperator tp(lambda.cols().transpose() * t.matrix() * lambda.cols());
        report.nu_prime = tp.eigenvalues()(0);
    }
    report.holds = report.nu < report.nu_prime;
    return report;
}

MinimaxResult minimax_sample(const SymmetricOperator& t, const OrthonormalBasis& lambda, int j,
                             int samples, std::uint64_t seed) {
    GapConditionReport gap = gap_condition(t, lambda);
    if (!gap.holds)
        throw HypothesisViolated("minimax_sample: gap condition nu < nu' fails");
    if (j < 1 || j > lambda.count())
        throw IndexOutOfRange("minimax_sample: j must lie in [1, dim Ran Lambda]");

    // nu is computed from a compression; when Lambda commutes with T it lands
    // a rounding-epsilon below an eigenvalue of T, which would re-include that
    // eigenvalue in the cut. Slack the threshold to stay strictly above nu.
    const double tol = tol_for(t.norm());
    const double cut = gap.nu + tol;
    SpectralCut above = variational_values(t, cut);
    if (above.count() < j)
        throw InternalContradiction("minimax_sample: fewer variational values above nu than dim Ran Lambda");
    const double reference = above.values[static_cast<std::size_t>(j - 1)];
    OrthonormalBasis d_minus = lambda.complement();

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    MinimaxResult result;
    result.reference = reference;
    result.estimate = kInf;
    result.floor_ok = true;
    for (int s = 0; s < samples; ++s) {
        Matrix coords(lambda.count(), j);
        for (Eigen::Index c = 0; c < coords.size(); ++c) coords(c) = gauss(rng);
        OrthonormalBasis sub = orthonormalize(coords);
        const Matrix m_cols = lambda.cols() * sub.cols();
        const double sup = sup_on_joined_subspace(t, m_cols, d_minus.cols());
        result.estimate = std::min(result.estimate, sup);
        if (sup < reference - tol) result.floor_ok = false;
    }

    const double commutator = operator_norm(t.matrix() * lambda.projector() -
                                            lambda.projector() * t.matrix());
    result.witness_checked = commutator <= tol;
    result.witness_value = kInf;
    if (result.witness_checked) {
        // The j lowest eigenvectors of T above nu realise the infimum.
        Matrix witness(t.dim(), j);
        int taken = 0;
        for (int i = 0; i < t.dim() && taken < j; ++i)
            if (t.eigenvalues()(i) > cut) witness.col(taken++) = t.eigenvectors().col(i);
        result.witness_value = sup_on_joined_subspace(t, witness, d_minus.cols());
    }
    return result;
}

}  // namespace gapcert
