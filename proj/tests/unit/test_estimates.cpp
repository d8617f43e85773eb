#include <cmath>
#include <numbers>

#include "doctest.h"
#include "subheat/error.hpp"
#include "subheat/estimates.hpp"

using namespace subheat;

TEST_SUITE("estimate_verifier") {

TEST_CASE("registry ids") {
    CHECK(all_estimates().size() == 12);
    CHECK(parse_estimate("E7") == EstimateId::E7);
    CHECK(parse_estimate("e12") == EstimateId::E12);
    CHECK(estimate_name(EstimateId::E3) == "E3");
    CHECK_THROWS_AS(parse_estimate("E13"), ConfigError);
    CHECK_THROWS_AS(parse_estimate("X1"), ConfigError);
}

TEST_CASE("E1 calibration: V = 0, alpha = 1/2, N = 0 gives 2/pi") {
    auto g = build_grid(1, 16.0, 256, Boundary::dirichlet);
    Backend be(g, PotentialSpec::zero());
    EstimateParams p;
    p.N = 0.0;
    auto c = certify(EstimateId::E1, p, be);
    CHECK(c.c_meas == doctest::Approx(2.0 / std::numbers::pi).epsilon(0.02));
    // E9 with beta = 1 reduces to a Poisson-type kernel as well
    auto c9 = certify(EstimateId::E9, p, be);
    CHECK(c9.c_meas < 2.0 * c.c_meas);
    CHECK(c9.c_meas > 0.5 * c.c_meas);
}

TEST_CASE("zero potential skips the rho-dependent parts") {
    auto g = build_grid(1, 8.0, 64, Boundary::dirichlet);
    Backend be(g, PotentialSpec::zero());
    EstimateParams p;
    CHECK(certify(EstimateId::E8, p, be).skipped);
    CHECK(certify(EstimateId::E11, p, be).skipped);
    auto e3 = certify(EstimateId::E3, p, be);
    CHECK_FALSE(e3.skipped);
    bool iii = false;
    for (const auto& part : e3.parts) iii = iii || (part.name == "iii" && part.skipped);
    CHECK(iii);
}

TEST_CASE("larger N weakens the majorant, so C grows") {
    auto g = build_grid(1, 16.0, 128, Boundary::dirichlet);
    Backend be(g, PotentialSpec::power(2.0));
    EstimateParams p;
    double prev = 0.0;
    for (double N : {0.0, 1.0, 2.0}) {
        p.N = N;
        auto c = certify(EstimateId::E1, p, be);
        CHECK(c.c_meas >= prev);
        prev = c.c_meas;
    }
}

TEST_CASE("kernel symmetry: swapping x and y leaves E1 unchanged") {
    auto g = build_grid(1, 16.0, 128, Boundary::dirichlet);
    Backend be(g, PotentialSpec::constant(1.0));
    EstimateParams p, q;
    q.swap_xy = true;
    CHECK(certify(EstimateId::E1, p, be).c_meas == doctest::Approx(certify(EstimateId::E1, q, be).c_meas).epsilon(1e-10));
}

TEST_CASE("refinement study on nested grids") {
    auto g1 = build_grid(1, 16.0, 64, Boundary::dirichlet), g2 = build_grid(1, 16.0, 128, Boundary::dirichlet);
    Backend b1(g1, PotentialSpec::constant(1.0)), b2(g2, PotentialSpec::constant(1.0));
    auto rep = refinement_study(EstimateId::E4, EstimateParams{}, {&b1, &b2});
    CHECK(rep.c_meas.size() == 2);
    CHECK(rep.ratio == doctest::Approx(rep.c_meas[0] / rep.c_meas[1]));
    auto g3 = build_grid(1, 16.0, 96, Boundary::dirichlet);
    Backend b3(g3, PotentialSpec::constant(1.0));
    CHECK_THROWS_AS(refinement_study(EstimateId::E4, EstimateParams{}, {&b2, &b3}), ConfigError);
}

TEST_CASE("rho axis is skipped when rho is constant") {
    auto g = build_grid(1, 16.0, 128, Boundary::dirichlet);
    Backend be(g, PotentialSpec::constant(1.0));
    auto fit = decay_exponent_fit(EstimateId::E1, EstimateParams{}, FitAxis::rho, be);
    CHECK(fit.skipped);
}

TEST_CASE("invalid parameters are config errors") {
    auto g = build_grid(1, 8.0, 64, Boundary::dirichlet);
    Backend be(g, PotentialSpec::constant(1.0));
    EstimateParams p;
    p.delta = 5.0;
    CHECK_THROWS_AS(certify(EstimateId::E3, p, be), ConfigError);
}

}
