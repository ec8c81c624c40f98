#include "gapcert/angle.hpp"

#include <cmath>

namespace gapcert {

Matrix inverse_sqrt_of_identity_plus(const Matrix& gram) {
    const Eigen::Index k = gram.rows();
    if (k == 0) return Matrix(0, 0);
    Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix::Identity(k, k) + 0.5 * (gram + gram.transpose()));
    Vector inv_sqrt = es.eigenvalues().cwiseSqrt().cwiseInverse();
    return es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().transpose();
}

AngleResult max_angle(const OrthonormalBasis& m, const OrthonormalBasis& n) {
    if (m.ambient_dim() != n.ambient_dim())
        throw DimensionMismatch("max_angle: ambient dimensions disagree");
    double s = operator_norm(m.projector() - n.projector());
    s = std::clamp(s, 0.0, 1.0);
    return AngleResult{s, std::asin(s)};
}

GraphRotation graph_tangent(const OrthonormalBasis& v, const OrthonormalBasis& w,
                            const ObliqueProjector& p) {
    if (v.ambient_dim() != w.ambient_dim() || v.ambient_dim() != p.matrix.rows())
        throw DimensionMismatch("graph_tangent: ambient dimensions disagree");
    const double sep = operator_norm(v.projector() - w.projector());
    if (sep >= 1.0 - tol_base())
        throw NotGraphRepresentable("graph_tangent: ||P_V - P_W|| >= 1, V is not a graph over W");

    const int n = w.ambient_dim();
    const int k = w.count();
    OrthonormalBasis wperp = w.complement();
    Matrix x = wperp.cols().transpose() * p.matrix * w.cols();

    // Block rotation in the W + W^perp frame, then conjugated to ambient
    // coordinates so that Umat P_W Umat^T = P_V.
    Matrix s_w = inverse_sqrt_of_identity_plus(x.transpose() * x);      // (I + X^T X)^{-1/2}
    Matrix s_wp = inverse_sqrt_of_identity_plus(x * x.transpose());     // (I + X X^T)^{-1/2}
    Matrix ublock(n, n);
    ublock.topLeftCorner(k, k) = s_w;
    ublock.topRightCorner(k, n - k) = -x.transpose() * s_wp;
    ublock.bottomLeftCorner(n - k, k) = x * s_w;
    ublock.bottomRightCorner(n - k, n - k) = s_wp;

    Matrix frame(n, n);
    frame.leftCols(k) = w.cols();
    frame.rightCols(n - k) = wperp.cols();
    Matrix umat = frame * ublock * frame.transpose();
    return GraphRotation{std::move(x), std::move(umat), w, std::move(wperp)};
}

std::pair<double, double> annular_residuals(const OrthonormalBasis& v, const OrthonormalBasis& w,
                                            const ObliqueProjector& p, const GraphRotation& g) {
    const int n = w.ambient_dim();
    const int k = w.count();
    Matrix frame(n, n);
    frame.leftCols(k) = g.w_frame.cols();
    frame.rightCols(n - k) = g.wperp_frame.cols();

    Matrix block_pw_p = frame.transpose() * (w.projector() - p.matrix) * frame;
    Matrix expected1 = Matrix::Zero(n, n);
    expected1.bottomLeftCorner(n - k, k) = -g.X;
    const double r1 = operator_norm(block_pw_p - expected1);

    Matrix nilpotent = Matrix::Zero(n, n);
    nilpotent.topRightCorner(k, n - k) = g.X.transpose();
    Matrix ublock = frame.transpose() * g.Umat * frame;
    Matrix expected2 = ublock * nilpotent * ublock.transpose();
    Matrix block_pv_p = frame.transpose() * (v.projector() - p.matrix) * frame;
    const double r2 = operator_norm(block_pv_p - expected2);
    return {r1, r2};
}

AngleReport angle_bound(const CompressionSetup& setup, const OperatorSplit& split) {
    AngleReport report;
    report.eta = split.eta;
    report.sin_UV = max_angle(setup.U, setup.V).sine;
    report.sin_UW = max_angle(setup.U, setup.W).sine;
    report.sin_VW = max_angle(setup.V, setup.W).sine;
    ObliqueProjector p = oblique_projection(setup.H, setup.U);
    GraphRotation g = graph_tangent(setup.V, setup.W, p);
    report.tan_VW = operator_norm(g.X);
    report.bound = std::min(report.sin_UV, report.sin_UW) + report.tan_VW;
    return report;
}

}  // namespace gapcert
