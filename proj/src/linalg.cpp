#include "gapcert/linalg.hpp"

#include <Eigen/SVD>
#include <atomic>
#include <cmath>

namespace gapcert {

namespace {
std::atomic<double> g_tol_base{1e-10};
}

double tol_base() { return g_tol_base.load(); }
void set_tol_base(double base) { g_tol_base.store(base); }
double tol_for(double scale) { return tol_base() * std::max(1.0, scale); }

void fix_column_signs(Matrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        Eigen::Index imax = 0;
        m.col(j).cwiseAbs().maxCoeff(&imax);
        if (m(imax, j) < 0.0) m.col(j) = -m.col(j);
    }
}

double operator_norm(const Matrix& b) {
    if (!b.allFinite()) throw NonFinite("operator_norm: matrix has NaN/Inf entries");
    if (b.rows() == 0 || b.cols() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(b);
    return svd.singularValues()(0);
}

SymmetricOperator::SymmetricOperator(Matrix entries) {
    if (entries.rows() != entries.cols())
        throw DimensionMismatch("SymmetricOperator: matrix must be square");
    if (!entries.allFinite())
        throw NonFinite("SymmetricOperator: entries contain NaN/Inf");
    entries_ = 0.5 * (entries + entries.transpose());
    if (entries_.rows() == 0) {
        values_ = Vector(0);
        vectors_ = Matrix(0, 0);
        return;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(entries_);
    if (es.info() != Eigen::Success)
        throw Error("SymmetricOperator: eigendecomposition failed");
    values_ = es.eigenvalues();
    vectors_ = es.eigenvectors();
    fix_column_signs(vectors_);
}

double SymmetricOperator::norm() const {
    if (dim() == 0) return 0.0;
    return std::max(std::abs(values_(0)), std::abs(values_(dim() - 1)));
}

double SymmetricOperator::min_abs_eigenvalue() const {
    if (dim() == 0) return kInf;
    return values_.cwiseAbs().minCoeff();
}

bool SymmetricOperator::invertible(double cutoff) const {
    if (cutoff < 0.0) cutoff = tol_for(norm());
    return min_abs_eigenvalue() > cutoff;
}

Matrix SymmetricOperator::apply_inverse(const Matrix& rhs, double cutoff) const {
    if (!invertible(cutoff))
        throw SingularOperator("apply_inverse: operator is numerically singular");
    return vectors_ * values_.cwiseInverse().asDiagonal() * (vectors_.transpose() * rhs);
}

Matrix SymmetricOperator::inverse_matrix(double cutoff) const {
    if (!invertible(cutoff))
        throw SingularOperator("inverse_matrix: operator is numerically singular");
    return vectors_ * values_.cwiseInverse().asDiagonal() * vectors_.transpose();
}

SymmetricOperator SymmetricOperator::absolute() const {
    return SymmetricOperator(vectors_ * values_.cwiseAbs().asDiagonal() * vectors_.transpose());
}

OrthonormalBasis::OrthonormalBasis(int ambient_dim) : cols_(ambient_dim, 0) {
    if (ambient_dim <= 0)
        throw DimensionMismatch("OrthonormalBasis: ambient dimension must be positive");
}

OrthonormalBasis::OrthonormalBasis(Matrix cols, double tol) : cols_(std::move(cols)) {
    if (cols_.rows() <= 0)
        throw DimensionMismatch("OrthonormalBasis: ambient dimension must be positive");
    if (!cols_.allFinite())
        throw NonFinite("OrthonormalBasis: columns contain NaN/Inf");
    const Eigen::Index k = cols_.cols();
    if (k > 0) {
        const Matrix gram = cols_.transpose() * cols_;
        const double defect = (gram - Matrix::Identity(k, k)).norm();
        if (defect > tol)
            throw RankDeficient("OrthonormalBasis: columns are not orthonormal within tolerance");
    }
}

OrthonormalBasis OrthonormalBasis::complement() const {
    const int n = ambient_dim();
    const int k = count();
    if (k == 0) {
        Matrix id = Matrix::Identity(n, n);
        return OrthonormalBasis(std::move(id), 1e-12);
    }
    if (k == n) return OrthonormalBasis(n);
    Eigen::HouseholderQR<Matrix> qr(cols_);
    Matrix q = qr.householderQ();
    Matrix comp = q.rightCols(n - k);
    fix_column_signs(comp);
    return OrthonormalBasis(std::move(comp), 1e-8);
}

std::pair<Vector, OrthonormalBasis> sym_eig(const SymmetricOperator& a) {
    return {a.eigenvalues(), OrthonormalBasis(a.eigenvectors(), 1e-8)};
}

OrthonormalBasis orthonormalize(const Matrix& cols, double tol) {
    if (!cols.allFinite()) throw NonFinite("orthonormalize: columns contain NaN/Inf");
    const Eigen::Index n = cols.rows();
    const Eigen::Index k = cols.cols();
    if (n < k) throw DimensionMismatch("orthonormalize: more columns than ambient dimension");
    if (k == 0) return OrthonormalBasis(static_cast<int>(n));
    Eigen::JacobiSVD<Matrix> svd(cols, Eigen::ComputeThinU);
    const Vector& sv = svd.singularValues();
    const double smax = sv(0);
    if (smax <= 0.0 || sv(k - 1) <= tol * smax)
        throw RankDeficient("orthonormalize: numerical rank below column count");
    Matrix q = svd.matrixU();
    fix_column_signs(q);
    return OrthonormalBasis(std::move(q), 1e-8);
}

OrthonormalBasis spectral_projector(const SymmetricOperator& a, double lo, double hi) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index i = 0; i < a.dim(); ++i)
        if (a.eigenvalues()(i) > lo && a.eigenvalues()(i) < hi) idx.push_back(i);
    Matrix cols(a.dim(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t j = 0; j < idx.size(); ++j) cols.col(j) = a.eigenvectors().col(idx[j]);
    if (idx.empty()) return OrthonormalBasis(a.dim());
    return OrthonormalBasis(std::move(cols), 1e-8);
}

SpectralCut variational_values(const SymmetricOperator& a, double gamma) {
    SpectralCut cut;
    cut.threshold = gamma;
    for (Eigen::Index i = 0; i < a.dim(); ++i)
        if (a.eigenvalues()(i) > gamma) cut.values.push_back(a.eigenvalues()(i));
    return cut;
}

}  // namespace gapcert
