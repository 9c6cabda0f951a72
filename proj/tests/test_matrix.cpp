#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "edwalk/matrix.hpp"

using namespace edwalk;

namespace {

double reconstruction_error(const Mat3& m, const Svd3& f) {
    double worst = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double v = 0;
            for (int k = 0; k < 3; ++k) v += f.W[i][k] * f.s[k] * f.V[j][k];
            worst = std::max(worst, std::abs(v - m[i][j]));
        }
    return worst;
}

double orthogonality_error(const Mat3& q) {
    double worst = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double dot = 0;
            for (int k = 0; k < 3; ++k) dot += q[k][i] * q[k][j];
            worst = std::max(worst, std::abs(dot - (i == j ? 1.0 : 0.0)));
        }
    return worst;
}

}  // namespace

TEST_CASE("identity, adjoint and shape rules") {
    ComplexMatrix id = ComplexMatrix::identity(3);
    CHECK(id.rows == 3);
    CHECK(id.at(0, 0) == cd{1.0, 0.0});
    CHECK(id.at(0, 1) == cd{0.0, 0.0});

    ComplexMatrix m(2, 3);
    m.at(0, 1) = cd{2.0, -1.0};
    m.at(1, 2) = cd{0.0, 4.0};
    ComplexMatrix a = m.adjoint();
    CHECK(a.rows == 3);
    CHECK(a.cols == 2);
    CHECK(a.at(1, 0) == cd{2.0, 1.0});
    CHECK(a.at(2, 1) == cd{0.0, -4.0});

    cvec v{cd{1, 0}, cd{0, 1}, cd{2, 0}};
    cvec mv = m * v;
    REQUIRE(mv.size() == 2);
    CHECK(std::abs(mv[0] - cd{1.0, 2.0}) < 1e-15);
    CHECK(std::abs(mv[1] - cd{0.0, 8.0}) < 1e-15);
}

TEST_CASE("inner is conjugate-linear in its first argument") {
    cvec x{cd{1, 1}, cd{2, -1}};
    cvec y{cd{0, 1}, cd{1, 0}};
    cd lhs = inner(x, y);
    cd direct = std::conj(x[0]) * y[0] + std::conj(x[1]) * y[1];
    CHECK(std::abs(lhs - direct) < 1e-15);
    CHECK(norm(x) == doctest::Approx(std::sqrt(7.0)).epsilon(1e-14));
}

TEST_CASE("matrix_power agrees with repeated multiplication") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    ComplexMatrix m(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m.at(i, j) = cd{unif(rng), unif(rng)} * 0.5;

    ComplexMatrix fold = ComplexMatrix::identity(4);
    for (long long k = 0; k <= 9; ++k) {
        ComplexMatrix fast = matrix_power(m, k);
        ComplexMatrix diff = fast - fold;
        CHECK(frobenius_norm(diff) < 1e-12);
        fold = fold * m;
    }
    CHECK_THROWS_AS((void)matrix_power(m, -1), std::invalid_argument);
}

TEST_CASE("matrix_power of a unitary stays unitary at k = 1e6") {
    const double th = 0.7370614;
    ComplexMatrix u(2, 2);
    u.at(0, 0) = cd{std::cos(th), 0};
    u.at(0, 1) = cd{std::sin(th), 0};
    u.at(1, 0) = cd{-std::sin(th), 0};
    u.at(1, 1) = cd{std::cos(th), 0};

    const long long k = 1'000'000;
    ComplexMatrix p = matrix_power(u, k);
    // ~20 squarings; the defect roughly doubles per squaring from eps
    CHECK(unitarity_defect(p) < 1e-9);

    // and it is the rotation by k*th, folded
    const double big = std::fmod(static_cast<double>(k) * th, 2.0 * std::numbers::pi);
    CHECK(std::abs(p.at(0, 0) - cd{std::cos(big), 0}) < 1e-8);
    CHECK(std::abs(p.at(0, 1) - cd{std::sin(big), 0}) < 1e-8);
}

TEST_CASE("svd3 of a diagonal returns its entries in order") {
    Mat3 d{{{2, 0, 0}, {0, 1, 0}, {0, 0, 0}}};
    Svd3 f = svd3(d);
    CHECK(f.s[0] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(f.s[1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(f.s[2]) < 1e-14);
    CHECK(reconstruction_error(d, f) < 1e-13);
    CHECK(orthogonality_error(f.W) < 1e-13);
    CHECK(orthogonality_error(f.V) < 1e-13);
}

TEST_CASE("svd3 randomized reconstruction and orthogonality") {
    std::mt19937 rng(20260816);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int trial = 0; trial < 10'000; ++trial) {
        Mat3 m{};
        for (auto& row : m)
            for (double& x : row) x = unif(rng);
        Svd3 f = svd3(m);
        CHECK(f.s[0] >= f.s[1]);
        CHECK(f.s[1] >= f.s[2]);
        CHECK(f.s[2] >= 0.0);
        REQUIRE(reconstruction_error(m, f) < 1e-12);
        // near-singular draws cost the left basis a few digits of
        // orthogonality (columns are normalized images A v_i)
        REQUIRE(orthogonality_error(f.W) < 1e-10);
        REQUIRE(orthogonality_error(f.V) < 1e-12);
    }
}

TEST_CASE("svd3 completes the basis on rank-deficient input") {
    // rank one: outer product
    const std::array<double, 3> u{0.6, 0.0, 0.8};
    const std::array<double, 3> v{0.0, 1.0, 0.0};
    Mat3 m{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = 3.0 * u[i] * v[j];
    Svd3 f = svd3(m);
    CHECK(f.s[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(std::abs(f.s[1]) < 1e-12);
    CHECK(std::abs(f.s[2]) < 1e-12);
    CHECK(reconstruction_error(m, f) < 1e-12);
    CHECK(orthogonality_error(f.W) < 1e-12);
    CHECK(orthogonality_error(f.V) < 1e-12);

    Mat3 zero{};
    Svd3 fz = svd3(zero);
    CHECK(std::abs(fz.s[0]) < 1e-14);
    CHECK(orthogonality_error(fz.W) < 1e-12);
    CHECK(orthogonality_error(fz.V) < 1e-12);
}

TEST_CASE("unitarity_defect flags non-unitary input") {
    ComplexMatrix id = ComplexMatrix::identity(3);
    CHECK(unitarity_defect(id) < 1e-15);
    ComplexMatrix two = cd{2.0, 0.0} * id;
    CHECK(unitarity_defect(two) > 1.0);
}
