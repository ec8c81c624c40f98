#pragma once

#include "gapcert/operator_split.hpp"

namespace gapcert {

/// Sines and tangents of the maximal angles between the subspaces attached
/// to a compression, plus the geometric bound on eta they imply.
struct AngleReport {
    double sin_UV;
    double sin_UW;
    double sin_VW;
    double tan_VW;
    double bound;  // min(sin_UV, sin_UW) + tan_VW
    double eta;
};

/// Graph operator X : W -> W^perp with V = { f + Xf : f in W }, and the
/// orthogonal block rotation carrying P_W to P_V. Both are stored in
/// ambient coordinates; the W / W^perp frame is kept for block residuals.
struct GraphRotation {
    Matrix X;        // (n-k) x k, expressed in the frame below
    Matrix Umat;     // n x n orthogonal, ambient coordinates
    OrthonormalBasis w_frame;      // basis of W
    OrthonormalBasis wperp_frame;  // basis of W^perp
};

struct AngleResult {
    double sine;
    double theta;  // arcsin(sine), convenience only
};

AngleResult max_angle(const OrthonormalBasis& m, const OrthonormalBasis& n);

GraphRotation graph_tangent(const OrthonormalBasis& v, const OrthonormalBasis& w,
                            const ObliqueProjector& p);

/// Residuals of the two block identities for P_W - P and P_V - P,
/// expressed in the W + W^perp frame.
std::pair<double, double> annular_residuals(const OrthonormalBasis& v, const OrthonormalBasis& w,
                                            const ObliqueProjector& p, const GraphRotation& g);

AngleReport angle_bound(const CompressionSetup& setup, const OperatorSplit& split);

/// (I + G)^{-1/2} for a symmetric positive semidefinite Gram matrix G,
/// via eigendecomposition.
Matrix inverse_sqrt_of_identity_plus(const Matrix& gram);

}  // namespace gapcert
