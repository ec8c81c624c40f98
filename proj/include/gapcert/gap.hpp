#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "gapcert/linalg.hpp"

namespace gapcert {

/// Relative-bound parameters of the perturbation A_1 = a I + b |A|, b < 1.
struct RelativeBoundParams {
    double a;
    double b;
    RelativeBoundParams(double a_, double b_) : a(a_), b(b_) {
        if (!(b >= 0.0 && b < 1.0))
            throw HypothesisViolated("RelativeBoundParams: b must lie in [0,1)");
    }
    double f_plus(double t) const { return t + (a + b * std::abs(t)); }
    double f_minus(double t) const { return t - (a + b * std::abs(t)); }
};

/// Resolvent interval (alpha, beta) of A and its image under f_+/f_-,
/// guaranteed free of spectrum of the perturbed operator.
struct GapWindow {
    double alpha;
    double beta;
    double mapped_low;   // f_+(alpha)
    double mapped_high;  // f_-(beta)
};

struct GapConditionReport {
    double nu;        // sup of the Rayleigh quotient over D_- (-inf if empty)
    double nu_prime;  // inf over D_+ (+inf if empty)
    bool holds;
};

struct PerturbedPair {
    double lambda_a;
    double lambda_b;
    double allowed;  // a + b |lambda_a|
    bool ok;
};

struct MinimaxResult {
    double estimate;   // min over sampled subspaces of the sup
    bool floor_ok;     // every sampled sup >= reference - tol
    double reference;  // lambda_{nu,j}(T)
    bool witness_checked;  // only when T commutes with the Lambda projector
    double witness_value;
};

/// True iff ||V A_1^{-1}|| <= 1 + tol, i.e. ||Vx|| <= ||A_1 x|| for all x.
bool relbound_check(const SymmetricOperator& a, const SymmetricOperator& v,
                    const RelativeBoundParams& p);

GapWindow guaranteed_interval(double alpha, double beta, const RelativeBoundParams& p);

/// Pairs the variational values of A above alpha with those of B = A + V
/// above f_+(alpha), index by index, and checks the relative bound.
std::vector<PerturbedPair> perturbed_compare(const SymmetricOperator& a,
                                             const SymmetricOperator& v,
                                             const RelativeBoundParams& p,
                                             const GapWindow& window);

/// Worst signed violation of the form sandwich A - A_1 <= B <= A + A_1 over
/// random unit vectors, combined with the semidefiniteness slack of A_1 +- V.
/// Nonpositive results mean the inequalities hold.
double form_sandwich_check(const SymmetricOperator& a, const SymmetricOperator& v,
                           const RelativeBoundParams& p, int samples, std::uint64_t seed);

GapConditionReport gap_condition(const SymmetricOperator& t, const OrthonormalBasis& lambda);

MinimaxResult minimax_sample(const SymmetricOperator& t, const OrthonormalBasis& lambda, int j,
                             int samples, std::uint64_t seed);

/// f_{+-}(A) by functional calculus.
SymmetricOperator apply_f_plus(const SymmetricOperator& a, const RelativeBoundParams& p);
SymmetricOperator apply_f_minus(const SymmetricOperator& a, const RelativeBoundParams& p);

}  // namespace gapcert
