#include "doctest.h"

#include "orthokin/sym_eigen.hpp"

#include "oracles.hpp"
#include "test_util.hpp"

using namespace orthokin;

TEST_CASE("diagonal and identity matrices") {
    const auto id = sym_eigen3(Mat3::identity());
    for (double v : id.values) CHECK(v == 1.0);

    const auto d = sym_eigen3(Mat3::diagonal(Vec3{-3.0, 7.0, 2.0}));
    CHECK(d.values[0] == 7.0);
    CHECK(d.values[1] == 2.0);
    CHECK(d.values[2] == -3.0);
    CHECK((d.vectors.col(0) - Vec3{0, 1, 0}).max_abs() == 0.0);
    CHECK((d.vectors.col(2) - Vec3{1, 0, 0}).max_abs() == 0.0);
}

TEST_CASE("eigenvalues match the Jacobi oracle on random symmetric matrices") {
    testutil::Rng rng(101);
    double worst = 0.0;
    for (int trial = 0; trial < 2000; ++trial) {
        const Mat3 a = testutil::random_symmetric(rng);
        const auto mine = sym_eigenvalues3(a);
        const auto oracle = testoracle::jacobi_eigenvalues(a);
        for (int i = 0; i < 3; ++i)
            worst = std::max(worst, std::abs(mine[i] - oracle[i]));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("eigenvectors satisfy A v = lambda v and are orthonormal") {
    testutil::Rng rng(202);
    for (int trial = 0; trial < 2000; ++trial) {
        const Mat3 a = testutil::random_symmetric(rng);
        const auto eig = sym_eigen3(a);
        for (int k = 0; k < 3; ++k) {
            const Vec3 v = eig.vectors.col(k);
            CHECK(std::abs(v.norm() - 1.0) <= 1e-12);
            CHECK((a * v - v * eig.values[k]).max_abs() <= 1e-8);
        }
        for (int k = 0; k < 3; ++k)
            CHECK(std::abs(eig.vectors.col(k).dot(eig.vectors.col((k + 1) % 3))) <= 1e-10);
    }
}

TEST_CASE("repeated eigenvalues still produce an orthonormal basis") {
    SUBCASE("triple") {
        const auto eig = sym_eigen3(Mat3::identity() * 2.5);
        for (int k = 0; k < 3; ++k) {
            CHECK(eig.values[k] == doctest::Approx(2.5).epsilon(1e-14));
            CHECK(std::abs(eig.vectors.col(k).norm() - 1.0) <= 1e-12);
        }
    }
    SUBCASE("double, off-diagonal") {
        // eigenvalues {3, 0, 0} with eigenvector (1,1,1)/sqrt(3) for 3
        Mat3 a;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) a(i, j) = 1.0;
        const auto eig = sym_eigen3(a);
        CHECK(eig.values[0] == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(std::abs(eig.values[1]) <= 1e-12);
        CHECK(std::abs(eig.values[2]) <= 1e-12);
        for (int k = 0; k < 3; ++k) {
            const Vec3 v = eig.vectors.col(k);
            CHECK((a * v - v * eig.values[k]).max_abs() <= 1e-10);
        }
    }
    SUBCASE("near-degenerate pair") {
        testutil::Rng rng(303);
        for (int trial = 0; trial < 200; ++trial) {
            // conjugate a nearly repeated diagonal by a random rotation built
            // from normalized cross products
            const Vec3 u = testutil::unit_vector(rng);
            Vec3 w = testutil::unit_vector(rng);
            Vec3 a1 = u.cross(w);
            while (a1.norm() < 1e-3) {
                w = testutil::unit_vector(rng);
                a1 = u.cross(w);
            }
            a1 = a1 / a1.norm();
            const Vec3 a2 = u.cross(a1);
            Mat3 rot = Mat3::from_rows(u, a1, a2);
            const double gap = std::pow(10.0, testutil::uniform(rng, -14.0, -6.0));
            const Mat3 d = Mat3::diagonal(Vec3{1.0, 1.0 + gap, 2.0});
            const Mat3 a = rot.transposed() * d * rot;
            const auto eig = sym_eigen3(a);
            for (int k = 0; k < 3; ++k) {
                const Vec3 v = eig.vectors.col(k);
                CHECK(std::abs(v.norm() - 1.0) <= 1e-10);
                CHECK((a * v - v * eig.values[k]).max_abs() <= 1e-7);
            }
            const auto oracle = testoracle::jacobi_eigenvalues(a);
            for (int k = 0; k < 3; ++k)
                CHECK(std::abs(eig.values[k] - oracle[k]) <= 1e-8);
        }
    }
}

TEST_CASE("scaling safety: tiny and huge magnitudes") {
    testutil::Rng rng(404);
    for (double scale : {1e-150, 1e-8, 1e8, 1e150}) {
        const Mat3 a = testutil::random_symmetric(rng) * scale;
        const auto mine = sym_eigenvalues3(a);
        const auto oracle = testoracle::jacobi_eigenvalues(a);
        for (int i = 0; i < 3; ++i)
            CHECK(std::abs(mine[i] - oracle[i]) <= 1e-12 * scale);
    }
    const auto zero = sym_eigen3(Mat3{});
    for (double v : zero.values) CHECK(v == 0.0);
}
