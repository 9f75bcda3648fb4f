#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "faberlab/zeros.hpp"

using namespace faberlab;
using Catch::Approx;

namespace {

FaberPolynomial poly(std::vector<cplx> coeffs) {
    FaberPolynomial p;
    p.coeffs = std::move(coeffs);
    p.n = static_cast<int>(p.coeffs.size()) - 1;
    return p;
}

}  // namespace

TEST_CASE("find_zeros on simple polynomials") {
    const auto nu = find_zeros(poly({-1.0, 0.0, 1.0}));  // z^2 - 1
    REQUIRE(nu.points.size() == 2);
    double d1 = 1e300, d2 = 1e300;
    for (const auto& z : nu.points) {
        d1 = std::min(d1, std::abs(z - 1.0));
        d2 = std::min(d2, std::abs(z + 1.0));
    }
    CHECK(d1 < 1e-10);
    CHECK(d2 < 1e-10);

    // z^3 - 1.5 z: {0, +-sqrt(1.5)}
    const auto nu3 = find_zeros(poly({0.0, -1.5, 0.0, 1.0}));
    REQUIRE(nu3.points.size() == 3);
    int at_zero = 0;
    for (const auto& z : nu3.points) {
        if (z == cplx{0.0, 0.0}) {
            ++at_zero;
            continue;
        }
        CHECK(std::abs(std::abs(z.real()) - std::sqrt(1.5)) < 1e-10);
        CHECK(std::abs(z.imag()) < 1e-10);
    }
    CHECK(at_zero == 1);
}

TEST_CASE("find_zeros cluster behavior for (z^3-1)^4") {
    const auto F = faber_lemniscate_closed(3, 12);
    const auto nu = find_zeros(F, 1e-13, 600);
    REQUIRE(nu.points.size() == 12);
    for (const auto& z : nu.points) {
        double d = 1e300;
        for (int k = 0; k < 3; ++k)
            d = std::min(d, std::abs(z - std::polar(1.0, 2.0 * M_PI * k / 3.0)));
        CHECK(d <= 1e-2);
    }
}

TEST_CASE("Vieta identities on Faber polynomials") {
    // degrees with simple zeros only; wide coefficients keep the general
    // finder honest once they pass 1e5
    for (int n : {10, 31, 61}) {
        const auto F = faber_lemniscate_closed_wide(3, n);
        const auto nu = find_zeros(F, 1e-13, 600);
        REQUIRE(nu.points.size() == static_cast<size_t>(n));
        cplx sum{0.0, 0.0};
        for (const auto& z : nu.points) sum += z;
        const cplx vs = -F.coeffs[n - 1].value() / F.coeffs[n].value();
        CHECK(std::abs(sum - vs) <= 1e-8 * (1.0 + std::abs(vs)));
        double norm1 = 0.0;
        for (const auto& c : F.coeffs) norm1 += abs_estimate(c);
        for (double r : nu.residuals) CHECK(r / norm1 <= 1e-8);
    }
}

TEST_CASE("structured lemniscate zeros at high degree") {
    // n = 200: the monomial-basis coefficients reach 1.1e19 and no fixed
    // precision evaluation resolves the outer zeros there; the recentred
    // factor form has order-one coefficients and no such wall
    const auto nu = find_zeros_lemniscate(3, 200, 1e-13, 600);
    REQUIRE(nu.points.size() == 200);
    CHECK(nu.converged);
    int origin = 0;
    cplx sum{0.0, 0.0};
    for (const auto& z : nu.points) {
        sum += z;
        if (z == cplx{0.0, 0.0}) ++origin;
    }
    CHECK(origin == 2);  // l = 200 mod 3
    // roots come in rotation triples, so the sum collapses to zero,
    // matching the vanishing z^199 coefficient
    CHECK(std::abs(sum) <= 1e-10);
    for (const auto& z : nu.points)
        if (z != cplx{0.0, 0.0})
            CHECK(std::abs(std::pow(z, 3) - 1.0) <= 1.0);
    for (double r : nu.residuals) CHECK(r <= 1e-10);
    // agreement with the general finder where both are reliable
    const auto direct = find_zeros(faber_lemniscate_closed_wide(3, 31));
    const auto structured = find_zeros_lemniscate(3, 31);
    for (const auto& z : structured.points) {
        double nearest = 1e300;
        for (const auto& w : direct.points)
            nearest = std::min(nearest, std::abs(z - w));
        CHECK(nearest <= 1e-9);
    }
}

TEST_CASE("equilibrium moments of the lemniscate") {
    const auto b = lemniscate_map(2);
    const auto mom = equilibrium_moments(b, 4);
    CHECK(std::abs(mom[0] - 1.0) < 1e-12);
    CHECK(std::abs(mom[1]) < 1e-12);
    // psi(w)^2 = w^2 + 1: constant Fourier term 1
    CHECK(std::abs(mom[2] - 1.0) < 1e-12);
    CHECK_THROWS_AS(equilibrium_moments(b, 4, 100), DomainError);
    // Parseval: int |z|^2 dmu = sum of squared Laurent coefficients
    const auto rad = equilibrium_radial_moments(b, 2);
    double expect = 0.0;
    expect += 1.0;  // leading
    for (const auto& c : b.map.tail) expect += std::norm(c);
    CHECK(rad[1] == Approx(expect).epsilon(1e-12));
}

TEST_CASE("measure_distance basics") {
    const auto b = lemniscate_map(2);
    const auto mom = equilibrium_moments(b, 6);
    // F_3 roots: {0, +-sqrt(1.5)}; m_2(nu) = (0 + 1.5 + 1.5)/3 = 1 = m_2(mu)
    CountingMeasure nu;
    nu.n = 3;
    nu.points = {cplx{0.0, 0.0}, cplx{std::sqrt(1.5), 0.0},
                 cplx{-std::sqrt(1.5), 0.0}};
    cplx m2{0.0, 0.0};
    for (const auto& z : nu.points) m2 += z * z;
    CHECK(std::abs(m2 / 3.0 - mom[2]) < 1e-12);

    // single point mass at the origin: k = 2 contributes |0 - 1| = 1
    CountingMeasure point;
    point.n = 1;
    point.points = {cplx{0.0, 0.0}};
    CHECK(measure_distance(point, mom, 2).value == Approx(1.0).margin(1e-10));

    // huge outlier is discarded and reported
    CountingMeasure weird;
    weird.n = 2;
    weird.points = {cplx{0.5, 0.0}, cplx{5e3, 0.0}};
    CHECK(measure_distance(weird, mom, 2).discarded == 1);
}

TEST_CASE("weak* trend for the lemniscate off the fixed subsequence") {
    const auto b = lemniscate_map(3);
    const auto mom = equilibrium_moments(b, 6);
    // radial moments are essential here: every holomorphic moment of the
    // fixed-zero measure coincides with the corresponding moment of mu_L
    const auto rad = equilibrium_radial_moments(b, 6);
    auto dist = [&](int n) {
        return measure_distance(find_zeros_lemniscate(3, n, 1e-13, 600), mom,
                                rad, 6)
            .value;
    };
    CHECK(dist(121) < dist(40));
    // fixed-zero subsequence does not converge to mu_L
    CHECK(dist(120) >= 0.1);
}

TEST_CASE("accumulation problem for the rational two-corner map") {
    const auto b = two_corner_map(3.0 * M_PI / 4.0, 64, {{3, 4}});
    const auto prob = make_accumulation_problem(b);
    REQUIRE(prob.p.size() == 2);
    CHECK(prob.lcm_q == 4);
    // thetas are {1, 1/4} in some order
    bool one = false, quarter = false;
    for (size_t k = 0; k < prob.p.size(); ++k) {
        if (prob.p[k] == 1 && prob.q[k] == 1) one = true;
        if (prob.p[k] == 1 && prob.q[k] == 4) quarter = true;
    }
    CHECK(one);
    CHECK(quarter);

    const auto pts = accumulation_points_rational(prob, b);
    CHECK(!pts.empty());
    CHECK(pts.size() <= 4);
    // each candidate solves one of the linear equations
    for (const auto& t : pts) {
        double best = 1e300;
        for (int s = 0; s < 4; ++s) {
            const cplx ph = std::polar(1.0, 2.0 * M_PI * s / 4.0);
            cplx v{0.0, 0.0};
            for (size_t k = 0; k < prob.A_hat.size(); ++k) {
                const cplx phase = (prob.q[k] == 1) ? cplx{1.0, 0.0} : ph;
                v += prob.A_hat[k] * phase / (t - prob.poles[k]);
            }
            best = std::min(best, std::abs(v));
        }
        CHECK(best < 1e-7);
    }
}

TEST_CASE("single-pole accumulation set is empty (lemniscate)") {
    const auto b = lemniscate_map(3, 64);
    const auto prob = make_accumulation_problem(b);
    try {
        const auto pts = accumulation_points_rational(prob, b);
        CHECK(pts.empty());
    } catch (const A3Violation&) {
        // all equations degenerate: also a correct outcome for the
        // common-pole lemniscate configuration
        SUCCEED();
    }
}

TEST_CASE("u = 2 irrational locus") {
    // synthetic equal-modulus case: z1 = -1, z2 = 1 -> imaginary axis
    AccumulationProblem prob;
    prob.A_hat = {cplx{1.0, 0.0}, cplx{0.0, 1.0}};
    prob.poles = {cplx{-1.0, 0.0}, cplx{1.0, 0.0}};
    prob.irrational = {false, true};
    const auto b = lemniscate_map(2, 64);  // membership domain only
    const auto loc = accumulation_locus_u2_irrational(prob, b);
    CHECK(loc.kind == AccumulationLocus::Kind::line);
    CHECK(std::abs(loc.point) < 1e-12);
    CHECK(std::abs(loc.direction.real()) < 1e-12);

    // |A^_1| = 2|A^_2|, z1 = 0, z2 = 1: locus 2|t - 1| = |t|, the
    // Apollonius circle with center 4/3 and radius 2/3
    AccumulationProblem ap;
    ap.A_hat = {cplx{2.0, 0.0}, cplx{1.0, 0.0}};
    ap.poles = {cplx{0.0, 0.0}, cplx{1.0, 0.0}};
    ap.irrational = {false, true};
    const auto circ = accumulation_locus_u2_irrational(ap, b);
    CHECK(circ.kind == AccumulationLocus::Kind::circle);
    CHECK(circ.point.real() == Approx(4.0 / 3.0).epsilon(1e-9));
    CHECK(circ.radius == Approx(2.0 / 3.0).epsilon(1e-9));
    // sampled points satisfy the defining modulus equation
    for (int i = 0; i < 8; ++i) {
        const cplx t = circ.point + std::polar(circ.radius, i * 0.7853);
        CHECK(std::abs(std::abs(2.0 * (t - ap.poles[1])) -
                       std::abs(t - ap.poles[0])) < 1e-9);
    }

    AccumulationProblem bad;
    bad.A_hat = {cplx{1.0, 0.0}};
    bad.poles = {cplx{0.0, 0.0}};
    CHECK_THROWS_AS(accumulation_locus_u2_irrational(bad, b), DomainError);
}

TEST_CASE("zero-free exterior check") {
    const auto b = lemniscate_map(2, 64);
    // F_3 roots all lie inside or on L
    const auto nu = find_zeros(faber_lemniscate_closed(2, 3));
    CHECK(zero_free_check(nu, b, 0.1).offenders.empty());
    // synthetic far-out root is reported
    CountingMeasure bad;
    bad.n = 1;
    bad.points = {cplx{10.0, 0.0}};
    CHECK(zero_free_check(bad, b, 0.1).offenders.size() == 1);
}
