#include <catch2/catch_amalgamated.hpp>

#include "faberlab/io.hpp"

using namespace faberlab;
using Catch::Approx;

TEST_CASE("angle parsing") {
    const auto a = parse_angle("3/4pi");
    CHECK(a.radians == Approx(3.0 * M_PI / 4.0));
    REQUIRE(a.pi_rational.has_value());
    CHECK(a.pi_rational->first == 3);
    CHECK(a.pi_rational->second == 4);

    const auto b = parse_angle("pi");
    CHECK(b.radians == Approx(M_PI));
    CHECK(b.pi_rational->first == 1);

    const auto c = parse_angle("2.356194490192345");
    CHECK(c.radians == Approx(2.356194490192345));
    CHECK(!c.pi_rational.has_value());

    // reduction to lowest terms
    const auto d = parse_angle("6/8pi");
    CHECK(d.pi_rational->first == 3);
    CHECK(d.pi_rational->second == 4);

    CHECK_THROWS_AS(parse_angle("three pies"), DomainError);
}

TEST_CASE("map spec parsing: built-ins") {
    const auto lem = parse_map_spec(json{{"kind", "lemniscate"}, {"s", 3}}, 64);
    CHECK(lem.kind == MapKind::lemniscate);
    CHECK(lem.corners.size() == 3);

    const auto tc = parse_map_spec(
        json{{"kind", "two_corner"}, {"theta1", "3/4pi"}}, 64);
    CHECK(tc.kind == MapKind::two_corner);
    REQUIRE(tc.corners.size() == 2);
    bool declared = false;
    for (const auto& c : tc.corners)
        if (c.theta_over_pi_rational) declared = true;
    CHECK(declared);

    const auto tcf = parse_map_spec(
        json{{"kind", "two_corner"}, {"theta1", 3.0 * M_PI / 4.0}}, 64);
    CHECK(std::abs(tcf.psi(2.0) - tc.psi(2.0)) < 1e-12);

    CHECK_THROWS_AS(parse_map_spec(json{{"kind", "nope"}}, 64), DomainError);
}

TEST_CASE("map spec parsing: user laurent map") {
    // psi(w) = w + 1/w maps T_1 onto [-2, 2] with corners at w = +-1
    json spec{
        {"kind", "laurent"},
        {"leading", {1.0, 0.0}},
        {"constant", {0.0, 0.0}},
        {"tail", {{1.0, 0.0}}},
        {"corners",
         {{{"theta", "0/1pi"}, {"lambda", 0.5}, {"z", {2.0, 0.0}}},
          {{"theta", "pi"}, {"lambda", 0.5}, {"z", {-2.0, 0.0}}}}}};
    const auto b = parse_map_spec(spec, 8);
    CHECK(b.kind == MapKind::user_laurent);
    CHECK(b.corners.size() == 2);
    CHECK(b.u == 2);
    CHECK(std::abs(b.psi(cplx{2.0, 0.0}) - 2.5) < 1e-14);

    // corner consistency is validated
    json bad = spec;
    bad["corners"][0]["z"] = {5.0, 0.0};
    CHECK_THROWS_AS(parse_map_spec(bad, 8), DomainError);

    json zero_lead = spec;
    zero_lead["leading"] = {0.0, 0.0};
    CHECK_THROWS_AS(parse_map_spec(zero_lead, 8), DomainError);
}

TEST_CASE("serialization schemas") {
    FaberPolynomial p;
    p.n = 2;
    p.coeffs = {cplx{-1.0, 0.0}, cplx{0.0, 0.0}, cplx{1.0, 0.5}};
    const json pj = polynomial_to_json(p);
    CHECK(pj["n"] == 2);
    CHECK(pj["coeffs"].size() == 3);
    CHECK(pj["coeffs"][2][1] == 0.5);

    CountingMeasure nu;
    nu.n = 1;
    nu.points = {cplx{0.25, -0.5}};
    nu.residuals = {1e-16};
    const json zj = zeros_to_json(nu);
    CHECK(zj["n"] == 1);
    CHECK(zj["zeros"][0][0] == 0.25);
    CHECK(zj["residuals"].size() == 1);

    AccumulationLocus loc;
    loc.kind = AccumulationLocus::Kind::line;
    loc.point = {0.0, 0.0};
    loc.direction = {1.0, 0.0};
    CHECK(locus_to_json(loc)["kind"] == "line");
    CHECK(points_to_json({cplx{1.0, 2.0}})["kind"] == "points");
}
