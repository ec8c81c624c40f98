#pragma once

#include <Eigen/Dense>
#include <limits>
#include <utility>
#include <vector>

#include "gapcert/errors.hpp"

namespace gapcert {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Base relative tolerance used throughout. Effective tolerances are
/// tol_base() * max(1, scale) with scale the norm of the operator at hand.
double tol_base();
void set_tol_base(double base);
double tol_for(double scale);

/// Largest singular value of a (not necessarily square) real matrix.
double operator_norm(const Matrix& b);

class OrthonormalBasis;

/// Dense real symmetric matrix with its eigendecomposition cached at
/// construction. Eigenvalues ascend with multiplicity; eigenvector columns
/// are orthonormal with a deterministic sign convention.
class SymmetricOperator {
public:
    explicit SymmetricOperator(Matrix entries);

    int dim() const { return static_cast<int>(entries_.rows()); }
    const Matrix& matrix() const { return entries_; }
    const Vector& eigenvalues() const { return values_; }
    const Matrix& eigenvectors() const { return vectors_; }

    /// Spectral norm, i.e. max |eigenvalue|.
    double norm() const;
    double min_abs_eigenvalue() const;
    bool invertible(double cutoff = -1.0) const;

    /// Applies H^{-1} via the cached eigendecomposition.
    Matrix apply_inverse(const Matrix& rhs, double cutoff = -1.0) const;
    Matrix inverse_matrix(double cutoff = -1.0) const;

    /// |H| via functional calculus.
    SymmetricOperator absolute() const;

private:
    Matrix entries_;
    Vector values_;
    Matrix vectors_;
};

/// Column-orthonormal matrix spanning a subspace; k = 0 is allowed.
class OrthonormalBasis {
public:
    explicit OrthonormalBasis(int ambient_dim);  // trivial subspace
    OrthonormalBasis(Matrix cols, double tol);   // validates orthonormality

    int ambient_dim() const { return static_cast<int>(cols_.rows()); }
    int count() const { return static_cast<int>(cols_.cols()); }
    const Matrix& cols() const { return cols_; }

    Matrix projector() const { return cols_ * cols_.transpose(); }

    /// Orthonormal basis of the orthogonal complement.
    OrthonormalBasis complement() const;

private:
    Matrix cols_;
};

/// Eigenvalues of a source operator strictly above a threshold, ascending
/// with multiplicity.
struct SpectralCut {
    double threshold;
    std::vector<double> values;
    int count() const { return static_cast<int>(values.size()); }
};

std::pair<Vector, OrthonormalBasis> sym_eig(const SymmetricOperator& a);

/// Orthonormalizes the column space; throws RankDeficient when the numerical
/// rank (singular value above tol * sigma_max) falls short of the column count.
OrthonormalBasis orthonormalize(const Matrix& cols, double tol = 1e-10);

/// Basis of the span of eigenvectors with eigenvalue in the open interval.
OrthonormalBasis spectral_projector(const SymmetricOperator& a, double lo, double hi);

SpectralCut variational_values(const SymmetricOperator& a, double gamma);

/// Deterministic sign convention: the entry of largest magnitude in each
/// column is made positive. Applied to every basis this library produces.
void fix_column_signs(Matrix& m);

}  // namespace gapcert
