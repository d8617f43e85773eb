#include <random>

#include "doctest.h"
#include "subheat/kernel_ops.hpp"

using namespace subheat;

TEST_SUITE("kernel_ops") {

TEST_CASE("OpenMP kernels reproduce the serial reference") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n(0.0, 1.0);
    RowMatrix phi(50, 40);
    for (Eigen::Index i = 0; i < phi.rows(); ++i)
        for (Eigen::Index k = 0; k < phi.cols(); ++k) phi(i, k) = n(rng);
    std::vector<double> w(40), f(50);
    for (auto& v : w) v = n(rng);
    for (auto& v : f) v = n(rng);

    auto a = serial::assemble_table(phi, w);
    auto b = parallel::assemble_table(phi, w);
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((b - b.transpose()).cwiseAbs().maxCoeff() == 0.0);

    auto x = serial::apply_table(a, f, 0.25);
    auto y = parallel::apply_table(a, f, 0.25);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(x[i] == doctest::Approx(y[i]).epsilon(1e-12));

    auto u = serial::apply_spectral(phi, w, f, 0.25);
    auto v = parallel::apply_spectral(phi, w, f, 0.25);
    for (std::size_t i = 0; i < u.size(); ++i) CHECK(u[i] == doctest::Approx(v[i]).epsilon(1e-12));
    // spectral application equals applying the assembled table
    for (std::size_t i = 0; i < u.size(); ++i) CHECK(u[i] == doctest::Approx(x[i]).epsilon(1e-10));
}

TEST_CASE("shape mismatches are rejected") {
    RowMatrix phi(4, 3);
    phi.setZero();
    CHECK_THROWS(parallel::assemble_table(phi, {1.0, 2.0}));
    CHECK_THROWS(serial::apply_spectral(phi, {1.0, 2.0, 3.0}, {1.0}, 1.0));
}

}
