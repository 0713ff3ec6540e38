#include <catch2/catch_amalgamated.hpp>

#include "locspec/sampling.hpp"
#include "locspec/spectral_core.hpp"
#include "locspec/subspace.hpp"

using namespace locspec;

namespace {

// independent oracle: determinant by cofactor expansion
Scalar det_cofactor(const Mat& m) {
    int n = m.dim();
    if (n == 1) return m(0, 0);
    Scalar d;
    for (int j = 0; j < n; ++j) {
        if (m(0, j).is_zero()) continue;
        Mat minor(n - 1, n - 1);
        for (int r = 1; r < n; ++r) {
            int cc = 0;
            for (int c = 0; c < n; ++c) {
                if (c == j) continue;
                minor(r - 1, cc++) = m(r, c);
            }
        }
        Scalar term = m(0, j) * det_cofactor(minor);
        d = (j % 2 == 0) ? d + term : d - term;
    }
    return d;
}

Mat from_int_rows(const std::vector<std::vector<long>>& rows) {
    Mat m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j) m(static_cast<int>(i), static_cast<int>(j)) = Scalar(rows[i][j]);
    return m;
}

}  // namespace

TEST_CASE("rref on identity and rank-1 grids") {
    Mat id = Mat::identity(3);
    RrefResult r = rref(id);
    CHECK(r.reduced == id);
    CHECK(r.pivots == std::vector<int>{0, 1, 2});

    Mat m = from_int_rows({{1, 2}, {2, 4}});
    RrefResult r2 = rref(m);
    CHECK(r2.pivots == std::vector<int>{0});
    CHECK(r2.reduced == from_int_rows({{1, 2}, {0, 0}}));
}

TEST_CASE("rref of invertible matrices is the identity (determinant oracle)") {
    Rng rng(11);
    int checked = 0;
    while (checked < 10) {
        Mat m = random_matrix(rng, 5);
        if (det_cofactor(m).is_zero()) continue;
        ++checked;
        RrefResult r = rref(m);
        CHECK(r.reduced == Mat::identity(5));
        CHECK(r.pivots.size() == 5);
    }
}

TEST_CASE("rref is idempotent") {
    Rng rng(12);
    for (int i = 0; i < 100; ++i) {
        Mat m = random_matrix(rng, 2 + i % 5);
        RrefResult r = rref(m);
        CHECK(rref(r.reduced).reduced == r.reduced);
    }
}

TEST_CASE("kernel, image, rank basics") {
    Mat z = Mat::zero(3);
    CHECK(kernel_basis(z) == Subspace::full(3));
    CHECK(image_basis(z).is_trivial());
    CHECK(rank(z) == 0);

    // x ⊗ f with f(x) = 1
    Vec x = {Scalar(1), Scalar(2), Scalar(0)};
    Functional f{{Scalar(1), Scalar(0), Scalar(3)}};
    REQUIRE(f(x) == Scalar(1));
    Mat r1 = rank_one(x, f);
    CHECK(rank(r1) == 1);
    CHECK(image_basis(r1) == Subspace::span(3, {x}));

    Mat shift = from_int_rows({{0, 1}, {0, 0}});
    CHECK(kernel_basis(shift) == Subspace::span(2, {unit_vec(2, 0)}));
    CHECK(image_basis(shift) == Subspace::span(2, {unit_vec(2, 0)}));
    CHECK(rank(shift) == 1);
}

TEST_CASE("rank is submultiplicative (500 random pairs)") {
    Rng rng(13);
    for (int i = 0; i < 500; ++i) {
        int n = 2 + i % 5;
        Mat a = random_matrix(rng, n), b = random_matrix(rng, n);
        CHECK(rank(a * b) <= std::min(rank(a), rank(b)));
    }
}

TEST_CASE("rank-nullity accounting") {
    Rng rng(14);
    for (int i = 0; i < 100; ++i) {
        int n = 2 + i % 5;
        Mat m = random_matrix(rng, n);
        CHECK(rank(m) == image_basis(m).dim());
        CHECK(rank(m) == n - kernel_basis(m).dim());
        CHECK(image_basis(m).contains(m * random_vector(rng, n)));
    }
}

TEST_CASE("solve_functional hits exact targets") {
    // constraints {(e1, 0), (e2, 1)} in C^3 -> f = (0, 1, 0)
    Functional f = solve_functional({{unit_vec(3, 0), Scalar(0)}, {unit_vec(3, 1), Scalar(1)}});
    CHECK(f.coeffs == Vec{Scalar(0), Scalar(1), Scalar(0)});

    Rng rng(15);
    for (int i = 0; i < 50; ++i) {
        Vec v1 = random_vector(rng, 5), v2 = random_vector(rng, 5), v3 = random_vector(rng, 5);
        if (rank(Mat::from_cols({v1, v2, v3})) != 3) continue;
        Scalar c1 = random_scalar(rng), c2 = random_scalar(rng), c3 = random_scalar(rng);
        Functional g = solve_functional({{v1, c1}, {v2, c2}, {v3, c3}});
        CHECK(g(v1) == c1);
        CHECK(g(v2) == c2);
        CHECK(g(v3) == c3);
    }
}

TEST_CASE("solve_functional rejects inconsistent constraints") {
    Vec v = {Scalar(1), Scalar(1)};
    CHECK_THROWS_AS(solve_functional({{v, Scalar(0)}, {v, Scalar(1)}}), std::domain_error);
    // dependent but consistent is fine
    Functional f = solve_functional({{v, Scalar(2)}, {v, Scalar(2)}});
    CHECK(f(v) == Scalar(2));
}

TEST_CASE("inverse and solve agree") {
    Rng rng(16);
    for (int i = 0; i < 30; ++i) {
        Mat m = random_invertible(rng, 4);
        Mat inv = inverse(m);
        CHECK(m * inv == Mat::identity(4));
        Vec b = random_vector(rng, 4);
        auto x = solve(m, b);
        REQUIRE(x.has_value());
        CHECK(m * *x == b);
    }
    CHECK_THROWS_AS(inverse(Mat::zero(3)), std::domain_error);
}
