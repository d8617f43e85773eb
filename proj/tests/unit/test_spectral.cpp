#include <algorithm>
#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "subheat/spectral.hpp"

using namespace subheat;

TEST_SUITE("spectral_engine") {

TEST_CASE("Dirichlet Laplacian eigenvalues are (4/h^2) sin^2(k pi / 2(M+1))") {
    const int M = 64;
    auto g = build_grid(1, 4.0, M, Boundary::dirichlet);
    auto op = assemble(g, PotentialSpec::zero());
    auto dec = eigendecompose(op);
    const double h = g.spacing();
    for (int k = 1; k <= M; ++k) {
        double exact = 4.0 / (h * h) * std::pow(std::sin(k * std::numbers::pi / (2.0 * (M + 1))), 2);
        CHECK(dec.lambda[k - 1] == doctest::Approx(exact).epsilon(1e-10));
    }
    CHECK_FALSE(dec.has_zero_mode);
    auto chk = check_decomposition(op, dec);
    CHECK(chk.orthonormality < 1e-10);
    CHECK(chk.residual < 1e-10);
}

TEST_CASE("periodic spectrum has a zero mode; constant V shifts it") {
    const int M = 32;
    auto g = build_grid(1, 4.0, M, Boundary::periodic);
    auto dec = eigendecompose(assemble(g, PotentialSpec::zero()));
    CHECK(dec.has_zero_mode);
    CHECK(dec.lambda[0] == 0.0);
    std::vector<double> exact;
    const double h = g.spacing();
    for (int k = 0; k < M; ++k) exact.push_back(4.0 / (h * h) * std::pow(std::sin(std::numbers::pi * k / M), 2));
    std::sort(exact.begin(), exact.end());
    for (int k = 1; k < M; ++k) CHECK(dec.lambda[k] == doctest::Approx(exact[k]).epsilon(1e-10));
    auto shifted = eigendecompose(assemble(g, PotentialSpec::constant(2.5)));
    for (int k = 0; k < M; ++k) CHECK(shifted.lambda[k] == doctest::Approx(exact[k] + 2.5).epsilon(1e-10));
    CHECK(dec.lambda_min_positive() == doctest::Approx(exact[1]));
}

TEST_CASE("2D Dirichlet spectrum is a sum of 1D spectra") {
    auto g1 = build_grid(1, 2.0, 8, Boundary::dirichlet);
    auto g2 = build_grid(2, 2.0, 8, Boundary::dirichlet);
    auto d1 = eigendecompose(assemble(g1, PotentialSpec::zero()));
    auto d2 = eigendecompose(assemble(g2, PotentialSpec::zero()));
    CHECK(d2.lambda.front() == doctest::Approx(2.0 * d1.lambda.front()));
    CHECK(d2.lambda.back() == doctest::Approx(2.0 * d1.lambda.back()));
}

TEST_CASE("Poisson multiplier equals the alpha = 1/2 fractional heat multiplier") {
    auto p = multipliers::poisson(0.7);
    auto f = multipliers::frac_heat(0.5, 0.7);
    for (double l : {0.0, 0.3, 1.0, 50.0}) CHECK(p(l) == f(l));
}

TEST_CASE("free lattice kernel matches modified Bessel functions") {
    auto g = build_grid(1, 16.0, 256, Boundary::dirichlet);
    const double h = g.spacing(), t = 0.5, z = 2.0 * t / (h * h);
    FreeLatticeKernel F(g, t);
    for (int k : {0, 1, 5, 20}) {
        double exact = std::exp(-z) * boost::math::cyl_bessel_i(k, z) / h;
        CHECK(F.axis_factor(k) == doctest::Approx(exact).epsilon(1e-10));
    }
}

TEST_CASE("periodic V = 0 heat kernel is the free lattice kernel with images") {
    auto g = build_grid(1, 2.0, 32, Boundary::periodic);
    auto dec = eigendecompose(assemble(g, PotentialSpec::zero()));
    const double t = 0.3;
    auto K = multiplier_kernel(dec, multipliers::heat(t), t);
    FreeLatticeKernel F(g, t);
    double err = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) err = std::max(err, std::abs(K(i, j) - F(i, j)));
    CHECK(err < 1e-12);
}

TEST_CASE("apply_kernel and apply_multiplier agree") {
    auto g = build_grid(1, 4.0, 64, Boundary::dirichlet);
    auto dec = eigendecompose(assemble(g, PotentialSpec::constant(1.0)));
    auto w = multiplier_weights(dec, multipliers::frac_heat(0.5, 1.0));
    GridFunction f(g);
    for (std::size_t i = 0; i < g.size(); ++i) f[i] = std::sin(g.coordinates(i)[0]);
    auto a = apply_kernel(kernel_from_weights(dec, w, 1.0, Route::spectral), f);
    auto b = apply_multiplier(dec, w, f);
    CHECK(l2_norm(a - b) < 1e-12);
}

TEST_CASE("semigroup property of the fractional heat kernel") {
    auto g = build_grid(1, 4.0, 64, Boundary::dirichlet);
    auto dec = eigendecompose(assemble(g, PotentialSpec::constant(1.0)));
    auto K1 = multiplier_kernel(dec, multipliers::frac_heat(0.3, 0.5), 0.5);
    auto K2 = multiplier_kernel(dec, multipliers::frac_heat(0.3, 1.0), 1.0);
    Eigen::MatrixXd ck = K1.table * K1.table * g.cell_volume();
    CHECK((ck - K2.table).cwiseAbs().maxCoeff() < 1e-10);
}

}
