#include <catch2/catch_amalgamated.hpp>

#include "locspec/io.hpp"
#include "locspec/sampling.hpp"

using namespace locspec;

TEST_CASE("matrix files round trip exactly") {
    Rng rng(91);
    for (int i = 0; i < 30; ++i) {
        Mat m = random_matrix(rng, 2 + i % 5);
        CHECK(parse_matrix(render_matrix(m)) == m);
    }
}

TEST_CASE("matrix file with mixed scalar forms") {
    Mat m = parse_matrix(R"({"dim":2,"entries":[["2/3-5i","1"],["0","-i"]]})");
    CHECK(m(0, 0) == parse_scalar("2/3-5i"));
    CHECK(m(0, 1) == Scalar(1));
    CHECK(m(1, 1) == parse_scalar("-i"));
}

TEST_CASE("matrix parse errors carry positions") {
    CHECK_THROWS_AS(parse_matrix("not json"), ParseError);
    CHECK_THROWS_AS(parse_matrix(R"({"dim":0,"entries":[]})"), ParseError);
    CHECK_THROWS_AS(parse_matrix(R"({"dim":2,"entries":[["1","2"]]})"), ParseError);
    CHECK_THROWS_AS(parse_matrix(R"({"dim":2,"entries":[["1","2"],["3"]]})"), ParseError);
    CHECK_THROWS_WITH(parse_matrix(R"({"dim":2,"entries":[["1","2"],["3","x"]]})"),
                      Catch::Matchers::ContainsSubstring("(1,1)"));
    CHECK_THROWS_AS(parse_matrix(R"({"entries":[]})"), ParseError);
}

TEST_CASE("vector argument parsing") {
    Vec v = parse_vector_arg("1,0,2/3-5i");
    REQUIRE(v.size() == 3);
    CHECK(v[2] == parse_scalar("2/3-5i"));
    CHECK_THROWS_AS(parse_vector_arg("1,,2"), ParseError);
    CHECK_THROWS_AS(parse_vector_arg("1,abc"), ParseError);
}

TEST_CASE("core chain certificates replay") {
    Rng rng(92);
    Mat t = random_invertible(rng, 4, 3);
    Vec x = random_nonzero_vector(rng, 4);
    CoreChainCertificate c = core_chain_certificate(t, x, 5);
    Json cert = certificate_core_chain(c);
    CHECK(replay_certificate(cert));

    // tamper with the chain: replay must reject
    Json bad = cert;
    bad["chain"][2][0] = render_scalar(parse_scalar(bad["chain"][2][0].get<std::string>()) + Scalar(1));
    CHECK_FALSE(replay_certificate(bad));
}

TEST_CASE("core-inflating and core-mismatch certificates replay") {
    Mat a(6, 6);
    for (int i = 0; i < 3; ++i) a(i, i) = Scalar(1);
    CoreInflatingWitness w = construct_core_inflating_T(a, 5);
    CHECK(replay_certificate(certificate_core_inflating(a, w)));

    Mat b = a + Mat::identity(6);
    ProportionalityResult pr = proportionality_test(a, b, 5000, 5);
    REQUIRE(pr.kind == ProportionalityResult::Kind::Witness);
    CHECK(replay_certificate(certificate_core_mismatch(a, b, pr.witness_f, pr.case_label)));
    // swapping in a rank-one F that does not separate must fail the replay
    CHECK_FALSE(replay_certificate(certificate_core_mismatch(a, a, pr.witness_f, "bogus")));
}

TEST_CASE("proportionality, combo and span certificates replay") {
    Rng rng(93);
    Mat a = random_matrix(rng, 3);
    CHECK(replay_certificate(certificate_proportionality(a, Scalar(2) * a, Scalar(2))));
    CHECK_FALSE(replay_certificate(certificate_proportionality(a, Scalar(2) * a, Scalar(3))));

    Mat s = random_matrix(rng, 3);
    Mat t = Scalar(4) * Mat::identity(3) + Scalar(-1) * s;
    CHECK(replay_certificate(certificate_affine_combo(t, s, Scalar(4), Scalar(-1))));
    CHECK_FALSE(replay_certificate(certificate_affine_combo(t + Mat::identity(3), s, Scalar(4), Scalar(-1))));

    Mat big = Mat::zero(3);
    big(1, 0) = Scalar(1);
    Mat other = Mat::zero(3);
    other(2, 0) = Scalar(1);
    Vec x = unit_vec(3, 0);
    REQUIRE(is_rank3_triple(x, big, other));
    CHECK(replay_certificate(certificate_span_witness(other, big, x)));
    CHECK_FALSE(replay_certificate(certificate_span_witness(big, big, x)));
}

TEST_CASE("pair counterexample certificates replay") {
    FalsifyOutcome fo = falsify_map(MapModel::transpose(3), 2000, 7);
    REQUIRE(fo.counterexample.has_value());
    Json cert = certificate_pair_counterexample(*fo.counterexample);
    CHECK(replay_certificate(cert));
    // an honest map's pair must fail the replay
    PairCounterexample fake{fo.counterexample->t, fo.counterexample->s, fo.counterexample->t, fo.counterexample->s};
    CHECK_FALSE(replay_certificate(certificate_pair_counterexample(fake)));
}

TEST_CASE("unknown certificate types are rejected") {
    CHECK_THROWS_AS(replay_certificate(Json{{"type", "mystery"}}), ParseError);
}

TEST_CASE("reports and the determinism key") {
    Json rep = make_report("core", 7, Json{{"dim", 3}});
    CHECK(rep["v"] == 1);
    rep["timings_ms"]["total"] = 123.4;
    Json rep2 = make_report("core", 7, Json{{"dim", 3}});
    rep2["timings_ms"]["total"] = 999.9;
    CHECK(determinism_key(rep) == determinism_key(rep2));
    rep2["seed"] = 8;
    CHECK(determinism_key(rep) != determinism_key(rep2));
}

TEST_CASE("replay summary counts failures") {
    Rng rng(94);
    Mat a = random_matrix(rng, 3);
    Json rep = make_report("propcheck", 1, Json::object());
    rep["certificates"].push_back(certificate_proportionality(a, Scalar(2) * a, Scalar(2)));
    rep["certificates"].push_back(certificate_proportionality(a, Scalar(2) * a, Scalar(5)));
    ReplaySummary s = replay_report(rep);
    CHECK(s.total == 2);
    CHECK(s.failed == 1);
    CHECK(replay_report(Json::object()).total == 0);
}
