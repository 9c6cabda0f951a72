#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "edwalk/matrix.hpp"
#include "edwalk/rotation.hpp"

using namespace edwalk;

namespace {

constexpr double kPi = std::numbers::pi;

std::mt19937 rng(99);

Rotation random_rotation(bool with_phase = true) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(-kPi, kPi);
    Rotation r;
    double nx = gauss(rng), ny = gauss(rng), nz = gauss(rng);
    double len = std::sqrt(nx * nx + ny * ny + nz * nz);
    if (len < 1e-3) {
        nx = 1;
        ny = nz = 0;
        len = 1;
    }
    r.axis = {nx / len, ny / len, nz / len};
    r.angle = unif(rng);
    r.global_phase = with_phase ? unif(rng) : 0.0;
    return r;
}

double matrix_gap(const ComplexMatrix& a, const ComplexMatrix& b) { return frobenius_norm(a - b); }

}  // namespace

TEST_CASE("axis z, quarter turn gives diag(-i, i)") {
    Rotation r;
    r.axis = {0, 0, 1};
    r.angle = kPi / 2.0;
    ComplexMatrix m = rotation_to_matrix(r);
    CHECK(std::abs(m.at(0, 0) - cd{0, -1}) < 1e-15);
    CHECK(std::abs(m.at(1, 1) - cd{0, 1}) < 1e-15);
    CHECK(std::abs(m.at(0, 1)) < 1e-15);
    CHECK(std::abs(m.at(1, 0)) < 1e-15);
}

TEST_CASE("unnormalized axis is rejected") {
    Rotation r;
    r.axis = {0, 0, 2};
    CHECK_THROWS_AS((void)rotation_to_matrix(r), std::invalid_argument);
}

TEST_CASE("composition matches the matrix product") {
    for (int trial = 0; trial < 2000; ++trial) {
        Rotation a = random_rotation();
        Rotation b = random_rotation();
        ComplexMatrix direct = rotation_to_matrix(b) * rotation_to_matrix(a);
        ComplexMatrix composed = rotation_to_matrix(compose_rotations(b, a));
        REQUIRE(matrix_gap(direct, composed) < 1e-10);
    }
}

TEST_CASE("repeated composition is a single rotation by the summed angle") {
    for (int trial = 0; trial < 50; ++trial) {
        Rotation r = random_rotation(false);
        ComplexMatrix m = rotation_to_matrix(r);
        for (long long k = 0; k <= 40; ++k) {
            Rotation scaled = r;
            scaled.angle = static_cast<double>(k) * r.angle;
            REQUIRE(matrix_gap(matrix_power(m, k), rotation_to_matrix(scaled)) < 1e-10);
        }
    }
}

TEST_CASE("matrix extraction round-trips") {
    for (int trial = 0; trial < 2000; ++trial) {
        Rotation r = random_rotation();
        ComplexMatrix m = rotation_to_matrix(r);
        Rotation back = rotation_from_matrix(m);
        REQUIRE(matrix_gap(m, rotation_to_matrix(back)) < 1e-12);
        REQUIRE(back.angle >= 0.0);
        REQUIRE(back.angle <= kPi + 1e-12);
    }
}

TEST_CASE("extraction ignores a real scale factor") {
    Rotation r = random_rotation();
    ComplexMatrix m = rotation_to_matrix(r);
    Rotation a = rotation_from_matrix(m);
    Rotation b = rotation_from_matrix(cd{3.0, 0.0} * m);
    CHECK(matrix_gap(rotation_to_matrix(a), rotation_to_matrix(b)) < 1e-12);
}

TEST_CASE("extraction rejects singular or misshapen input") {
    ComplexMatrix zero(2, 2);
    CHECK_THROWS_AS((void)rotation_from_matrix(zero), std::invalid_argument);
    ComplexMatrix odd(3, 3);
    CHECK_THROWS_AS((void)rotation_from_matrix(odd), std::invalid_argument);
}

TEST_CASE("a rotation composed with its inverse collapses to the canonical axis") {
    Rotation r = random_rotation(false);
    Rotation inv = r;
    inv.angle = -r.angle;
    Rotation prod = compose_rotations(inv, r);
    CHECK(prod.axis[0] == 0.0);
    CHECK(prod.axis[1] == 0.0);
    CHECK(prod.axis[2] == 1.0);
    CHECK(matrix_gap(rotation_to_matrix(prod), ComplexMatrix::identity(2)) < 1e-12);
}
