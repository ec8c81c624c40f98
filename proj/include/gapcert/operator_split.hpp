#pragma once

#include "gapcert/linalg.hpp"

namespace gapcert {

/// The compression M = Q^T H Q together with the image subspaces
/// V = span(H Q) and W = span(H^{-1} Q).
struct CompressionSetup {
    SymmetricOperator H;
    OrthonormalBasis U;
    SymmetricOperator M;
    OrthonormalBasis V;
    OrthonormalBasis W;
};

/// Idempotent P = H P_U H^{-1}, the projection onto V along W^perp.
struct ObliqueProjector {
    Matrix matrix;
    OrthonormalBasis range_basis;   // V
    OrthonormalBasis kernel_basis;  // W^perp
};

struct OperatorSplit {
    SymmetricOperator H_diag;
    SymmetricOperator H_off;
    double eta;  // = ||P_U - P||
};

struct FactorizationReport {
    double factorization_residual;  // H_off H^{-1} vs (P_U - P_U^perp)(P_U - P)
    double norm_identity_residual;  // | ||P_U - P|| - ||P_U(I-P) + P_U^perp P|| |
};

SymmetricOperator compress(const SymmetricOperator& h, const OrthonormalBasis& u);

std::pair<OrthonormalBasis, OrthonormalBasis> image_subspaces(const SymmetricOperator& h,
                                                              const OrthonormalBasis& u);

ObliqueProjector oblique_projection(const SymmetricOperator& h, const OrthonormalBasis& u);

OperatorSplit diag_off_split(const SymmetricOperator& h, const OrthonormalBasis& u);

FactorizationReport verify_factorization(const SymmetricOperator& h, const OrthonormalBasis& u);

CompressionSetup make_compression_setup(const SymmetricOperator& h, const OrthonormalBasis& u);

}  // namespace gapcert
