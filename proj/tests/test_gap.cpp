#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gapcert/gap.hpp"
#include "gapcert/operator_split.hpp"
#include "support/generators.hpp"

using namespace gapcert;
namespace gt = gapcert::testing;

namespace {

SymmetricOperator diag(std::initializer_list<double> d) {
    Vector v(static_cast<Eigen::Index>(d.size()));
    Eigen::Index i = 0;
    for (double x : d) v(i++) = x;
    return SymmetricOperator(Matrix(v.asDiagonal()));
}

SymmetricOperator flip_times(double c) {
    Matrix m(2, 2);
    m << 0, c, c, 0;
    return SymmetricOperator(m);
}

/// Random (A, V, window) satisfying all hypotheses of the perturbation bound
/// by construction: a = 0, the gap (alpha, beta) is centred in A's spectral
/// gap around zero, b is half of the largest admissible value, and V is a
/// random symmetric matrix scaled so that ||V A_1^{-1}|| <= 0.99.
struct PerturbInstance {
    SymmetricOperator a;
    SymmetricOperator v;
    RelativeBoundParams p;
    GapWindow window;
};

PerturbInstance draw_perturb(int n, std::mt19937_64& rng) {
    auto spectrum = gt::indefinite_spectrum(n / 2, n - n / 2, 0.5, 4.0, rng);
    SymmetricOperator a(gt::with_spectrum(spectrum, rng));
    const Vector& ev = a.eigenvalues();
    double neg_top = -kInf, pos_bot = kInf;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) < 0) neg_top = std::max(neg_top, ev(i));
        else pos_bot = std::min(pos_bot, ev(i));
    }
    const double width = pos_bot - neg_top;
    const double alpha = neg_top + 0.1 * width;
    const double beta = pos_bot - 0.1 * width;
    const double b = 0.5 * (beta - alpha) / (std::abs(alpha) + std::abs(beta));
    RelativeBoundParams p(0.0, b);
    Matrix g = gt::random_symmetric(n, rng);
    Matrix a1 = p.a * Matrix::Identity(n, n) + p.b * a.absolute().matrix();
    const double scale = operator_norm(g * a1.inverse());
    SymmetricOperator v(Matrix(0.99 / scale * g));
    return {std::move(a), std::move(v), p, guaranteed_interval(alpha, beta, p)};
}

}  // namespace

TEST_CASE("relbound_check") {
    SymmetricOperator a = diag({-1, 1});
    SUBCASE("zero perturbation") {
        CHECK(relbound_check(a, diag({0, 0}), RelativeBoundParams(0.1, 0.2)));
    }
    SUBCASE("offdiagonal at exactly the bound") {
        // |A| = I, so ||Vx|| = 0.3 ||x|| = ||A_1 x||.
        CHECK(relbound_check(a, flip_times(0.3), RelativeBoundParams(0.0, 0.3)));
    }
    SUBCASE("perturbation twice too large") {
        CHECK_FALSE(relbound_check(a, diag({2, 2}), RelativeBoundParams(0.0, 1.0 - 1e-12)));
    }
    SUBCASE("degenerate A_1 is rejected") {
        CHECK_THROWS_AS(relbound_check(a, diag({0, 0}), RelativeBoundParams(0.0, 0.0)),
                        DegenerateBound);
    }
    SUBCASE("b outside [0,1) is rejected") {
        CHECK_THROWS_AS(RelativeBoundParams(0.0, 1.0), HypothesisViolated);
        CHECK_THROWS_AS(RelativeBoundParams(0.0, -0.1), HypothesisViolated);
    }
}

TEST_CASE("guaranteed_interval") {
    SUBCASE("symmetric window shrinks by eta") {
        const double eta = 0.389418;
        GapWindow w = guaranteed_interval(-1, 1, RelativeBoundParams(0, eta));
        CHECK(w.mapped_low == doctest::Approx(-1 + eta).epsilon(1e-14));
        CHECK(w.mapped_high == doctest::Approx(1 - eta).epsilon(1e-14));
    }
    SUBCASE("asymmetric arithmetic") {
        GapWindow w = guaranteed_interval(-2, 3, RelativeBoundParams(0.1, 0.2));
        CHECK(w.mapped_low == doctest::Approx(-1.5).epsilon(1e-14));
        CHECK(w.mapped_high == doctest::Approx(2.3).epsilon(1e-14));
    }
    SUBCASE("violated hypothesis names the inequality") {
        CHECK_THROWS_WITH_AS(guaranteed_interval(-1, 1, RelativeBoundParams(1.1, 0.0)),
                             doctest::Contains("2a + b("), HypothesisViolated);
    }
}

TEST_CASE("perturbed_compare") {
    SymmetricOperator a = diag({-1, 1});
    SUBCASE("zero perturbation gives zero differences") {
        RelativeBoundParams p(0.0, 0.3);
        GapWindow w = guaranteed_interval(-0.5, 0.5, p);
        auto pairs = perturbed_compare(a, diag({0, 0}), p, w);
        REQUIRE(pairs.size() == 1);
        CHECK(pairs[0].lambda_a == doctest::Approx(1).epsilon(1e-14));
        CHECK(pairs[0].lambda_b == doctest::Approx(1).epsilon(1e-14));
        CHECK(pairs[0].ok);
    }
    SUBCASE("closed-form offdiagonal case") {
        RelativeBoundParams p(0.0, 0.3);
        GapWindow w = guaranteed_interval(-0.5, 0.5, p);
        auto pairs = perturbed_compare(a, flip_times(0.3), p, w);
        REQUIRE(pairs.size() == 1);
        CHECK(pairs[0].lambda_a == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(pairs[0].lambda_b == doctest::Approx(std::sqrt(1.09)).epsilon(1e-12));
        CHECK(pairs[0].lambda_b == doctest::Approx(1.044031).epsilon(1e-6));
        CHECK(pairs[0].allowed == doctest::Approx(0.3).epsilon(1e-14));
        CHECK(pairs[0].ok);
    }
    SUBCASE("eigenvalue inside the window is rejected") {
        RelativeBoundParams p(0.0, 0.1);
        GapWindow w{-0.5, 1.5, p.f_plus(-0.5), p.f_minus(1.5)};
        CHECK_THROWS_AS(perturbed_compare(a, diag({0, 0}), p, w), WindowNotInResolvent);
    }
    SUBCASE("100 random hypothesis-satisfying instances") {
        std::mt19937_64 rng(53);
        for (int trial = 0; trial < 100; ++trial) {
            PerturbInstance inst = draw_perturb(8, rng);
            REQUIRE(relbound_check(inst.a, inst.v, inst.p));
            auto pairs = perturbed_compare(inst.a, inst.v, inst.p, inst.window);
            // Counts above the window edges agree (checked internally too).
            CHECK(pairs.size() ==
                  variational_values(inst.a, inst.window.alpha).values.size());
            for (const auto& pr : pairs) {
                CHECK(pr.ok);
                CHECK(std::abs(pr.lambda_b - pr.lambda_a) <= pr.allowed + 1e-10);
            }
        }
    }
}

TEST_CASE("form_sandwich_check") {
    SymmetricOperator a = diag({-1, 1});
    SUBCASE("zero perturbation") {
        CHECK(form_sandwich_check(a, diag({0, 0}), RelativeBoundParams(0.0, 0.3), 100, 1) <=
              0.0);
    }
    SUBCASE("offdiagonal case: A_1 +- V has eigenvalues {0, 0.6}") {
        SymmetricOperator v = flip_times(0.3);
        RelativeBoundParams p(0.0, 0.3);
        CHECK(form_sandwich_check(a, v, p, 200, 2) <= 0.0);
        const Matrix a1 = p.b * a.absolute().matrix();
        SymmetricOperator plus(Matrix(a1 + v.matrix()));
        SymmetricOperator minus(Matrix(a1 - v.matrix()));
        CHECK(plus.eigenvalues()(0) == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(plus.eigenvalues()(1) == doctest::Approx(0.6).epsilon(1e-12));
        CHECK(minus.eigenvalues()(0) == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("random hypothesis-satisfying instances stay nonpositive") {
        std::mt19937_64 rng(59);
        for (int trial = 0; trial < 30; ++trial) {
            PerturbInstance inst = draw_perturb(7, rng);
            CHECK(form_sandwich_check(inst.a, inst.v, inst.p, 50, 1000 + trial) <= 1e-10);
        }
    }
}

TEST_CASE("gap_condition") {
    SymmetricOperator t = diag({-1, 2});
    Matrix e1(2, 1), e2(2, 1);
    e1 << 1, 0;
    e2 << 0, 1;
    SUBCASE("aligned spectral subspace") {
        GapConditionReport r = gap_condition(t, OrthonormalBasis(e2, 1e-12));
        CHECK(r.nu == doctest::Approx(-1).epsilon(1e-14));
        CHECK(r.nu_prime == doctest::Approx(2).epsilon(1e-14));
        CHECK(r.holds);
    }
    SUBCASE("swapped subspace fails") {
        GapConditionReport r = gap_condition(t, OrthonormalBasis(e1, 1e-12));
        CHECK(r.nu == doctest::Approx(2).epsilon(1e-14));
        CHECK(r.nu_prime == doctest::Approx(-1).epsilon(1e-14));
        CHECK_FALSE(r.holds);
    }
    SUBCASE("full and empty Lambda use the sentinels") {
        Matrix both(2, 2);
        both << 1, 0, 0, 1;
        GapConditionReport full = gap_condition(t, OrthonormalBasis(both, 1e-12));
        CHECK(full.nu == -kInf);
        CHECK(full.holds);
        GapConditionReport empty = gap_condition(t, OrthonormalBasis(Matrix(2, 0), 1e-12));
        CHECK(empty.nu_prime == kInf);
    }
    SUBCASE("spectral Lambda of diag(-1,1,3) sits inside the mapped window") {
        SymmetricOperator h = diag({-1, 1, 3});
        const double alpha = -0.5, beta = 0.5;
        OrthonormalBasis lambda = spectral_projector(h, alpha, kInf);
        GapConditionReport r = gap_condition(h, lambda);
        RelativeBoundParams p(0.0, 0.3);
        CHECK(r.holds);
        CHECK(r.nu <= p.f_plus(alpha));
        CHECK(r.nu_prime >= p.f_minus(beta));
    }
}

TEST_CASE("minimax_sample") {
    SymmetricOperator t = diag({-1, 1, 3});
    OrthonormalBasis lambda = spectral_projector(t, 0.0, kInf);
    SUBCASE("commuting witness equality at j = 1") {
        MinimaxResult r = minimax_sample(t, lambda, 1, 50, 7);
        CHECK(r.witness_checked);
        CHECK(r.witness_value == doctest::Approx(1).epsilon(1e-10));
        CHECK(r.reference == doctest::Approx(1).epsilon(1e-12));
        CHECK(r.floor_ok);
    }
    SUBCASE("commuting witness equality at j = 2") {
        MinimaxResult r = minimax_sample(t, lambda, 2, 50, 7);
        CHECK(r.witness_checked);
        CHECK(r.witness_value == doctest::Approx(3).epsilon(1e-10));
        CHECK(r.reference == doctest::Approx(3).epsilon(1e-12));
    }
    SUBCASE("non-commuting Lambda keeps the floor and a close estimate") {
        // Rotate the spectral subspace by a small angle in the (e1, e2) plane.
        const double th = 0.05;
        Matrix cols(3, 2);
        cols << std::sin(th), 0, std::cos(th), 0, 0, 1;
        OrthonormalBasis tilted(cols, 1e-12);
        MinimaxResult r = minimax_sample(t, tilted, 1, 500, 11);
        CHECK_FALSE(r.witness_checked);
        CHECK(r.floor_ok);
        CHECK(r.estimate >= r.reference - 1e-10);
        CHECK(r.estimate <= r.reference + 0.05);
    }
    SUBCASE("failed gap condition is rejected") {
        OrthonormalBasis bottom = spectral_projector(t, -kInf, 0.0);
        CHECK_THROWS_AS(minimax_sample(t, bottom, 1, 10, 1), HypothesisViolated);
    }
    SUBCASE("j beyond dim Ran Lambda is rejected") {
        CHECK_THROWS_AS(minimax_sample(t, lambda, 3, 10, 1), IndexOutOfRange);
    }
}

TEST_CASE("spectral mapping of f_plus and f_minus") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 25; ++trial) {
        SymmetricOperator a(gt::random_symmetric(6, rng));
        RelativeBoundParams p(0.2, 0.4);
        std::uniform_real_distribution<double> level(-2.0, 2.0);
        const double alpha = level(rng);
        SpectralCut base = variational_values(a, alpha);
        SpectralCut plus = variational_values(apply_f_plus(a, p), p.f_plus(alpha));
        SpectralCut minus = variational_values(apply_f_minus(a, p), p.f_minus(alpha));
        REQUIRE(plus.values.size() == base.values.size());
        REQUIRE(minus.values.size() == base.values.size());
        for (std::size_t i = 0; i < base.values.size(); ++i) {
            CHECK(plus.values[i] == doctest::Approx(p.f_plus(base.values[i])).epsilon(1e-10));
            CHECK(minus.values[i] ==
                  doctest::Approx(p.f_minus(base.values[i])).epsilon(1e-10));
        }
    }
}

TEST_CASE("window is free of perturbed spectrum on random instances") {
    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 100; ++trial) {
        PerturbInstance inst = draw_perturb(7, rng);
        SymmetricOperator b(Matrix(inst.a.matrix() + inst.v.matrix()));
        for (Eigen::Index i = 0; i < b.eigenvalues().size(); ++i) {
            const double ev = b.eigenvalues()(i);
            const bool inside = ev > inst.window.mapped_low + 1e-12 &&
                                ev < inst.window.mapped_high - 1e-12;
            CHECK_FALSE(inside);
        }
        // Counts above the matching edges agree.
        CHECK(variational_values(inst.a, inst.window.alpha).count() ==
              variational_values(b, inst.window.mapped_low).count());
    }
}

TEST_CASE("declared tail cluster of A pins the cluster of B") {
    // All eigenvalues of A at the threshold d collapse the bound to the
    // interval [f_-(d), f_+(d)] for the corresponding eigenvalues of B.
    std::mt19937_64 rng(71);
    const double d = 5.0;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> spectrum = {-2.0, -1.0, 1.0, 2.0, d, d, d};
        SymmetricOperator a(gt::with_spectrum(spectrum, rng));
        RelativeBoundParams p(0.0, 0.1);
        Matrix g = gt::random_symmetric(7, rng);
        Matrix a1 = p.b * a.absolute().matrix();
        SymmetricOperator v(Matrix(0.99 / operator_norm(g * a1.inverse()) * g));
        GapWindow w = guaranteed_interval(-0.5, 0.5, p);
        auto pairs = perturbed_compare(a, v, p, w);
        REQUIRE(pairs.size() == 5);
        for (std::size_t i = 2; i < pairs.size(); ++i) {
            CHECK(pairs[i].lambda_a == doctest::Approx(d).epsilon(1e-10));
            CHECK(pairs[i].lambda_b >= p.f_minus(d) - 1e-10);
            CHECK(pairs[i].lambda_b <= p.f_plus(d) + 1e-10);
        }
    }
}
