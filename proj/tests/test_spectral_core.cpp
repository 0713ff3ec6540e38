#include <catch2/catch_amalgamated.hpp>

#include "locspec/sampling.hpp"
#include "locspec/spectral_core.hpp"

using namespace locspec;

namespace {

Mat diag(const std::vector<long>& d) {
    Mat m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = Scalar(d[i]);
    return m;
}

}  // namespace

TEST_CASE("jordan product") {
    Mat t(2, 2), s(2, 2);
    t(0, 1) = Scalar(1);
    s(1, 0) = Scalar(1);
    CHECK(jordan_product(t, s) == Mat::identity(2));
    CHECK(jordan_product(t, t) == Scalar(2) * (t * t));
    Rng rng(31);
    for (int i = 0; i < 200; ++i) {
        int n = 2 + i % 4;
        Mat a = random_matrix(rng, n), b = random_matrix(rng, n);
        CHECK(jordan_product(a, b) == jordan_product(b, a));
    }
    CHECK_THROWS_AS(jordan_product(Mat::zero(2), Mat::zero(3)), std::invalid_argument);
}

TEST_CASE("rank-one operators: nilpotent vs idempotent") {
    Rng rng(32);
    for (int i = 0; i < 50; ++i) {
        int n = 3 + i % 3;
        Vec x = random_nonzero_vector(rng, n);
        Vec other = random_nonzero_vector(rng, n);
        if (rank(Mat::from_cols({x, other})) != 2) continue;

        Functional f0 = solve_functional({{x, Scalar(0)}, {other, Scalar(1)}});
        Mat nil = rank_one(x, f0);
        CHECK((nil * nil).is_zero());

        Functional f1 = solve_functional({{x, Scalar(1)}});
        Mat idem = rank_one(x, f1);
        CHECK(idem * idem == idem);
    }
    CHECK(rank_one(zero_vec(3), Functional{random_vector(rng, 3)}).is_zero());
}

TEST_CASE("analytic core on canonical examples") {
    Mat shift(2, 2);
    shift(0, 1) = Scalar(1);
    CHECK(analytic_core(shift).is_trivial());  // nilpotent

    CHECK(analytic_core(Mat::identity(4)) == Subspace::full(4));

    // diag(1, 0): stabilized range R(T^2) = span{e1} (hand oracle: T = T^2)
    Mat d = diag({1, 0});
    CHECK(image_basis(d * d) == Subspace::span(2, {unit_vec(2, 0)}));
    CHECK(analytic_core(d) == Subspace::span(2, {unit_vec(2, 0)}));

    // K(x ⊗ f) = span{x} when f(x) != 0
    Vec x = {Scalar(1), Scalar(2), Scalar(3)};
    Functional f{{Scalar(1), Scalar(1), Scalar(0)}};
    REQUIRE(!f(x).is_zero());
    CHECK(analytic_core(rank_one(x, f)) == Subspace::span(3, {x}));
    // and {0} when f(x) = 0
    Functional g = solve_functional({{x, Scalar(0)}, {unit_vec(3, 0), Scalar(1)}});
    CHECK(analytic_core(rank_one(x, g)).is_trivial());
}

TEST_CASE("core membership") {
    Mat d = diag({0, 2});
    CHECK(core_membership(d, unit_vec(2, 1)));
    CHECK_FALSE(core_membership(d, unit_vec(2, 0) + unit_vec(2, 1)));
    CHECK(core_membership(d, zero_vec(2)));
}

TEST_CASE("eig shift kernels") {
    Mat d = diag({2, 3});
    CHECK(eig_shift_kernel(d, Scalar(2)) == Subspace::span(2, {unit_vec(2, 0)}));
    CHECK(eig_shift_kernel(d, Scalar(7)).is_trivial());
    CHECK(eig_shift_kernel(d, Scalar(2)).contained_in(analytic_core(d)));
}

TEST_CASE("chain certificates on scalar and projection-like operators") {
    Mat two = Scalar(2) * Mat::identity(3);
    CoreChainCertificate c = core_chain_certificate(two, unit_vec(3, 0), 4);
    REQUIRE(c.chain.size() == 5);
    CHECK(c.chain[4] == Scalar(mpq_class(1, 16)) * unit_vec(3, 0));
    CHECK(c.delta == Catch::Approx(0.5));
    CHECK(verify_core_chain(c));

    Mat p = diag({1, 1, 0});
    Vec x = unit_vec(3, 0) + unit_vec(3, 1);
    CoreChainCertificate c2 = core_chain_certificate(p, x, 3);
    for (const auto& xk : c2.chain) CHECK(xk == x);  // T acts as identity on the core
    CHECK(verify_core_chain(c2));
}

TEST_CASE("chain certificates on random invertible operators") {
    Rng rng(33);
    for (int i = 0; i < 20; ++i) {
        Mat t = random_invertible(rng, 4, 3);
        Vec x = random_nonzero_vector(rng, 4);
        CoreChainCertificate c = core_chain_certificate(t, x, 6);
        CHECK(verify_core_chain(c));
    }
}

TEST_CASE("chain certificate preconditions") {
    Mat d = diag({0, 2});
    CHECK_THROWS_AS(core_chain_certificate(d, unit_vec(2, 0), 3), std::domain_error);
    CHECK_THROWS_AS(core_chain_certificate(d, zero_vec(2), 3), std::domain_error);
}

TEST_CASE("core laws on random operators") {
    Rng rng(34);
    for (int i = 0; i < 100; ++i) {
        int n = 2 + i % 5;
        Mat t = random_matrix(rng, n);
        Subspace core = analytic_core(t);
        CHECK(core.contained_in(image_basis(t)));
        CHECK(analytic_core(random_nonzero_scalar(rng) * t) == core);
        CHECK(apply(t, core) == core);
    }
    for (int i = 0; i < 100; ++i) {
        Mat nil = random_nilpotent(rng, 2 + i % 5, /*conjugate=*/true);
        CHECK(analytic_core(nil).is_trivial());
    }
}

TEST_CASE("range chain stabilizes and stays put") {
    Rng rng(35);
    for (int i = 0; i < 50; ++i) {
        int n = 2 + i % 5;
        Mat t = random_with_rank(rng, n, 1 + static_cast<int>(rng.range(0, n - 1)));
        // find s with rank(T^s) = rank(T^{s+1})
        int s = 1;
        while (s <= n && rank(mat_pow(t, s)) != rank(mat_pow(t, s + 1))) ++s;
        CHECK(s <= n);
        Subspace stabilized = image_basis(mat_pow(t, s));
        for (int k = s + 1; k <= n + 1; ++k) CHECK(image_basis(mat_pow(t, k)) == stabilized);
        CHECK(analytic_core(t) == stabilized);
    }
}
