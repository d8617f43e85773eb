#include <cmath>

#include "doctest.h"
#include "subheat/error.hpp"
#include "subheat/grid.hpp"

using namespace subheat;

TEST_SUITE("core_grid") {

TEST_CASE("cell-centred coordinates") {
    auto g = build_grid(1, 16.0, 256, Boundary::dirichlet);
    CHECK(g.spacing() == doctest::Approx(0.125));
    CHECK(g.cell_volume() == doctest::Approx(0.125));
    CHECK(g.coordinates(0)[0] == doctest::Approx(-15.9375));
    CHECK(g.coordinates(255)[0] == doctest::Approx(15.9375));
    CHECK(g.size() == 256);
}

TEST_CASE("flat and multi index round trip, axis 0 fastest") {
    auto g = build_grid(3, 1.0, 8, Boundary::dirichlet);
    CHECK(g.size() == 512);
    CHECK(g.flat_index({1, 0, 0}) == 1);
    CHECK(g.flat_index({0, 1, 0}) == 8);
    CHECK(g.flat_index({0, 0, 1}) == 64);
    for (std::size_t i = 0; i < g.size(); i += 37) CHECK(g.flat_index(g.multi_index(i)) == i);
}

TEST_CASE("periodic distance wraps, Dirichlet does not") {
    auto p = build_grid(1, 4.0, 8, Boundary::periodic);
    auto d = build_grid(1, 4.0, 8, Boundary::dirichlet);
    CHECK(p.distance(0, 7) == doctest::Approx(1.0));
    CHECK(d.distance(0, 7) == doctest::Approx(7.0));
}

TEST_CASE("neighbours") {
    auto d = build_grid(1, 4.0, 8, Boundary::dirichlet);
    auto p = build_grid(1, 4.0, 8, Boundary::periodic);
    CHECK(d.neighbor(0, 0, -1) == -1);
    CHECK(d.neighbor(3, 0, 1) == 4);
    CHECK(p.neighbor(0, 0, -1) == 7);
    CHECK(p.neighbor(7, 0, 1) == 0);
}

TEST_CASE("ball membership counts strict interior points") {
    auto g = build_grid(1, 16.0, 256, Boundary::dirichlet);
    auto b = ball_points(g, {0.0, 0.0, 0.0}, 1.0);
    CHECK(b.members.size() == 16);
    CHECK(b.contained);
    CHECK(b.measure(g) == doctest::Approx(2.0));
    auto edge = ball_points(g, {15.0, 0.0, 0.0}, 2.0);
    CHECK_FALSE(edge.contained);
}

TEST_CASE("2D ball approximates pi r^2") {
    auto g = build_grid(2, 4.0, 128, Boundary::dirichlet);
    auto b = ball_points(g, {0.0, 0.0, 0.0}, 1.0);
    CHECK(b.measure(g) == doctest::Approx(3.14159265).epsilon(0.02));
}

TEST_CASE("integration and norms") {
    auto g = build_grid(1, 1.0, 64, Boundary::dirichlet);
    GridFunction f(g);
    for (std::size_t i = 0; i < g.size(); ++i) f[i] = g.coordinates(i)[0] * g.coordinates(i)[0];
    // midpoint rule for x^2 on [-1,1]: 2/3 - h^2/6 * ... exact error -h^2/12 * 2
    const double h = g.spacing();
    CHECK(grid_integrate(f) == doctest::Approx(2.0 / 3.0 - h * h / 6.0).epsilon(1e-12));
    CHECK(l2_norm(f) * l2_norm(f) == doctest::Approx(inner_product(f, f)));
    CHECK(max_abs(f) == doctest::Approx(std::pow(1.0 - h / 2, 2)));
}

TEST_CASE("invalid grids are config errors") {
    CHECK_THROWS_AS(build_grid(4, 1.0, 8, Boundary::dirichlet), ConfigError);
    CHECK_THROWS_AS(build_grid(1, 1.0, 9, Boundary::dirichlet), ConfigError);
    CHECK_THROWS_AS(build_grid(1, -1.0, 8, Boundary::dirichlet), ConfigError);
    auto g = build_grid(1, 1.0, 8, Boundary::dirichlet);
    CHECK_THROWS_AS(GridFunction(g, std::vector<double>(3)), ConfigError);
}

}
