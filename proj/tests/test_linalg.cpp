#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gapcert/linalg.hpp"
#include "support/generators.hpp"

using namespace gapcert;
namespace gt = gapcert::testing;

TEST_CASE("sym_eig diagonal case") {
    Matrix m = Vector{{-1.0, 1.0, 2.0}}.asDiagonal();
    SymmetricOperator a(m);
    CHECK(a.eigenvalues()(0) == doctest::Approx(-1).epsilon(1e-14));
    CHECK(a.eigenvalues()(1) == doctest::Approx(1).epsilon(1e-14));
    CHECK(a.eigenvalues()(2) == doctest::Approx(2).epsilon(1e-14));
    auto [values, vectors] = sym_eig(a);
    CHECK((vectors.projector() - Matrix::Identity(3, 3)).norm() < 1e-12);
}

TEST_CASE("sym_eig antidiagonal 2x2 is symmetry forced") {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    SymmetricOperator a(m);
    CHECK(a.eigenvalues()(0) == doctest::Approx(-1).epsilon(1e-14));
    CHECK(a.eigenvalues()(1) == doctest::Approx(1).epsilon(1e-14));
}

TEST_CASE("sym_eig reconstruction residual on random 8x8") {
    std::mt19937_64 rng(7);
    SymmetricOperator a(gt::random_symmetric(8, rng));
    const Matrix recon = a.eigenvectors() * a.eigenvalues().asDiagonal() *
                         a.eigenvectors().transpose();
    CHECK((recon - a.matrix()).norm() <= 1e-10 * std::max(1.0, a.norm()));
}

TEST_CASE("sym_eig rejects NaN") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = std::nan("");
    CHECK_THROWS_AS(SymmetricOperator{m}, NonFinite);
}

TEST_CASE("operator_norm examples") {
    CHECK(operator_norm(Vector{{-3.0, 2.0}}.asDiagonal()) == doctest::Approx(3).epsilon(1e-14));
    Matrix flip(2, 2);
    flip << 0, 1, 1, 0;
    CHECK(operator_norm(flip) == doctest::Approx(1).epsilon(1e-14));
    // Singular values of an antidiagonal 2x2 are the absolute entries.
    Matrix anti(2, 2);
    anti << 0, 0.129806, -0.389418, 0;
    CHECK(operator_norm(anti) == doctest::Approx(0.389418).epsilon(1e-12));
    Matrix bad(1, 1);
    bad << std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(operator_norm(bad), NonFinite);
}

TEST_CASE("orthonormalize") {
    SUBCASE("already orthonormal columns keep their span") {
        Matrix cols = Matrix::Identity(4, 2);
        OrthonormalBasis q = orthonormalize(cols);
        CHECK((q.projector() - cols * cols.transpose()).norm() < 1e-12);
    }
    SUBCASE("single column is normalized") {
        Matrix cols(2, 1);
        cols << 1, 1;
        OrthonormalBasis q = orthonormalize(cols);
        CHECK(q.cols()(0, 0) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-14));
        CHECK(q.cols()(1, 0) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-14));
    }
    SUBCASE("repeated column is rank deficient") {
        Matrix cols(3, 2);
        cols << 1, 1, 0, 0, 0, 0;
        CHECK_THROWS_AS(orthonormalize(cols), RankDeficient);
    }
}

TEST_CASE("spectral_projector") {
    SymmetricOperator a(Vector{{-1.0, 2.0}}.asDiagonal());
    SUBCASE("positive part of diag(-1,2)") {
        OrthonormalBasis b = spectral_projector(a, 0.0, kInf);
        CHECK(b.count() == 1);
        CHECK(std::abs(b.cols()(1, 0)) == doctest::Approx(1).epsilon(1e-14));
    }
    SUBCASE("full interval gives the whole space") {
        CHECK(spectral_projector(a, -kInf, kInf).count() == 2);
    }
    SUBCASE("empty interval gives the trivial basis") {
        CHECK(spectral_projector(a, 5.0, 6.0).count() == 0);
    }
    SUBCASE("conjugation oracle under a Givens rotation") {
        const double th = 0.3;
        Matrix g(2, 2);
        g << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
        SymmetricOperator rotated(g * a.matrix() * g.transpose());
        OrthonormalBasis b = spectral_projector(rotated, 0.0, kInf);
        const Vector expected = g.col(1);  // rotated e2
        CHECK((b.projector() - expected * expected.transpose()).norm() <= 1e-12);
        CHECK((rotated.matrix() * b.projector() - b.projector() * rotated.matrix()).norm() <=
              1e-12);
    }
}

namespace {
void check_values(const std::vector<double>& got, const std::vector<double>& expected) {
    REQUIRE(got.size() == expected.size());
    for (std::size_t i = 0; i < got.size(); ++i)
        CHECK(got[i] == doctest::Approx(expected[i]).epsilon(1e-12));
}
}  // namespace

TEST_CASE("variational_values") {
    SymmetricOperator a(Vector{{-2.0, -1.0, 1.0, 3.0}}.asDiagonal());
    SUBCASE("gamma = 0") { check_values(variational_values(a, 0.0).values, {1, 3}); }
    SUBCASE("gamma = -1.5") { check_values(variational_values(a, -1.5).values, {-1, 1, 3}); }
    SUBCASE("multiplicity preserved") {
        SymmetricOperator b(Vector{{2.0, 2.0, 5.0}}.asDiagonal());
        check_values(variational_values(b, 0.0).values, {2, 2, 5});
    }
}

TEST_CASE("projector count matches variational count on random instances") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> level(-2.0, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        SymmetricOperator a(gt::random_symmetric(6, rng));
        const double gamma = level(rng);
        CHECK(spectral_projector(a, gamma, kInf).count() ==
              variational_values(a, gamma).count());
    }
}

TEST_CASE("orthonormal bases have unit operator norm") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        OrthonormalBasis q = orthonormalize(gt::gaussian(7, 3, rng));
        CHECK(std::abs(operator_norm(q.cols()) - 1.0) < 1e-12);
    }
}

TEST_CASE("orthonormalize is idempotent on projectors") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        OrthonormalBasis q = orthonormalize(gt::gaussian(9, 4, rng));
        OrthonormalBasis q2 = orthonormalize(q.cols());
        CHECK((q.projector() - q2.projector()).norm() <= 1e-12);
    }
}

TEST_CASE("complement basis is orthogonal to the span") {
    std::mt19937_64 rng(19);
    OrthonormalBasis q = orthonormalize(gt::gaussian(8, 3, rng));
    OrthonormalBasis comp = q.complement();
    CHECK(comp.count() == 5);
    CHECK((q.cols().transpose() * comp.cols()).norm() < 1e-12);
    CHECK((q.projector() + comp.projector() - Matrix::Identity(8, 8)).norm() < 1e-12);
}
