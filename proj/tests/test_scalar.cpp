#include <catch2/catch_amalgamated.hpp>

#include "locspec/sampling.hpp"
#include "locspec/scalar.hpp"

using namespace locspec;

TEST_CASE("scalar grammar round trips") {
    CHECK(render_scalar(parse_scalar("3")) == "3");
    CHECK(render_scalar(parse_scalar("-1/2")) == "-1/2");
    CHECK(render_scalar(parse_scalar("2/3-5i")) == "2/3-5i");
    CHECK(render_scalar(parse_scalar("i")) == "i");
    CHECK(render_scalar(parse_scalar("-i")) == "-i");
    CHECK(render_scalar(parse_scalar("1+i")) == "1+i");

    GaussianRational z = parse_scalar("2/3-5i");
    CHECK(z.re == mpq_class(2, 3));
    CHECK(z.im == mpq_class(-5));
}

TEST_CASE("scalar parse canonicalizes") {
    CHECK(parse_scalar("2/4") == parse_scalar("1/2"));
    CHECK(parse_scalar("0/7") == GaussianRational(0));
}

TEST_CASE("scalar parse rejects malformed input") {
    CHECK_THROWS_AS(parse_scalar(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_scalar("1/"), std::invalid_argument);
    CHECK_THROWS_AS(parse_scalar("2i+3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_scalar("1+2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_scalar("abc"), std::invalid_argument);
}

TEST_CASE("field laws hold exactly on random samples") {
    Rng rng(42);
    for (int i = 0; i < 200; ++i) {
        GaussianRational a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        if (!a.is_zero()) CHECK(a * a.inverse() == GaussianRational(1));
    }
}

TEST_CASE("render/parse identity on random scalars") {
    Rng rng(7);
    for (int i = 0; i < 100; ++i) {
        GaussianRational z = random_scalar(rng);
        CHECK(parse_scalar(render_scalar(z)) == z);
    }
}

TEST_CASE("gaussian square roots") {
    GaussianRational w;
    REQUIRE(gaussian_sqrt(parse_scalar("4"), w));
    CHECK(w == parse_scalar("2"));
    REQUIRE(gaussian_sqrt(parse_scalar("-9"), w));
    CHECK(w == parse_scalar("3i"));
    REQUIRE(gaussian_sqrt(parse_scalar("2i"), w));
    CHECK(w * w == parse_scalar("2i"));  // (1+i)^2 = 2i
    CHECK_FALSE(gaussian_sqrt(parse_scalar("2"), w));
    CHECK_FALSE(gaussian_sqrt(parse_scalar("i"), w));

    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        GaussianRational z = random_scalar(rng);
        GaussianRational sq = z * z, r;
        REQUIRE(gaussian_sqrt(sq, r));
        CHECK(r * r == sq);
    }
}
