#include "gapcert/operator_split.hpp"

namespace gapcert {

namespace {

void check_dims(const SymmetricOperator& h, const OrthonormalBasis& u, const char* where) {
    if (h.dim() != u.ambient_dim())
        throw DimensionMismatch(std::string(where) + ": ambient dimensions disagree");
}

void check_invertible(const SymmetricOperator& h, const char* where) {
    if (!h.invertible())
        throw SingularOperator(std::string(where) + ": operator fails the invertibility cutoff");
}

}  // namespace

SymmetricOperator compress(const SymmetricOperator& h, const OrthonormalBasis& u) {
    check_dims(h, u, "compress");
    const Matrix& q = u.cols();
    return SymmetricOperator(q.transpose() * h.matrix() * q);
}

std::pair<OrthonormalBasis, OrthonormalBasis> image_subspaces(const SymmetricOperator& h,
                                                              const OrthonormalBasis& u) {
    check_dims(h, u, "image_subspaces");
    check_invertible(h, "image_subspaces");
    if (u.count() == 0)
        return {OrthonormalBasis(h.dim()), OrthonormalBasis(h.dim())};
    OrthonormalBasis v = orthonormalize(h.matrix() * u.cols());
    OrthonormalBasis w = orthonormalize(h.apply_inverse(u.cols()));
    return {std::move(v), std::move(w)};
}

ObliqueProjector oblique_projection(const SymmetricOperator& h, const OrthonormalBasis& u) {
    check_dims(h, u, "oblique_projection");
    check_invertible(h, "oblique_projection");
    auto [v, w] = image_subspaces(h, u);
    Matrix p = h.matrix() * u.projector() * h.inverse_matrix();
    return ObliqueProjector{std::move(p), std::move(v), w.complement()};
}

OperatorSplit diag_off_split(const SymmetricOperator& h, const OrthonormalBasis& u) {
    check_dims(h, u, "diag_off_split");
    check_invertible(h, "diag_off_split");
    const Matrix pu = u.projector();
    const Matrix pc = Matrix::Identity(h.dim(), h.dim()) - pu;
    Matrix hd = pu * h.matrix() * pu + pc * h.matrix() * pc;
    hd = 0.5 * (hd + hd.transpose()).eval();
    Matrix hoff = h.matrix() - hd;  // exact complement
    ObliqueProjector p = oblique_projection(h, u);
    const double eta = operator_norm(pu - p.matrix);
    return OperatorSplit{SymmetricOperator(std::move(hd)), SymmetricOperator(std::move(hoff)),
                         eta};
}

FactorizationReport verify_factorization(const SymmetricOperator& h, const OrthonormalBasis& u) {
    check_dims(h, u, "verify_factorization");
    check_invertible(h, "verify_factorization");
    OperatorSplit split = diag_off_split(h, u);
    ObliqueProjector p = oblique_projection(h, u);
    const Matrix pu = u.projector();
    const Matrix id = Matrix::Identity(h.dim(), h.dim());
    const Matrix pc = id - pu;

    const Matrix lhs = split.H_off.matrix() * h.inverse_matrix();
    const Matrix rhs = (pu - pc) * (pu - p.matrix);
    FactorizationReport report;
    report.factorization_residual = operator_norm(lhs - rhs);
    report.norm_identity_residual =
        std::abs(split.eta - operator_norm(pu * (id - p.matrix) + pc * p.matrix));
    return report;
}

CompressionSetup make_compression_setup(const SymmetricOperator& h, const OrthonormalBasis& u) {
    auto [v, w] = image_subspaces(h, u);
    return CompressionSetup{h, u, compress(h, u), std::move(v), std::move(w)};
}

}  // namespace gapcert
