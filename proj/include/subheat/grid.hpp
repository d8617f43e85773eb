#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace subheat {

enum class Boundary { dirichlet, periodic };

using Point = std::array<double, 3>;

/// Uniform cell-centred grid on the box [-L, L)^n, n in {1,2,3}.
///
/// Point i along an axis sits at -L + (i + 1/2) h with h = 2L/M; flat indices
/// run with axis 0 fastest. Dirichlet grids see zero values one cell outside
/// the box; periodic grids identify -L with L and measure distances on the
/// torus.
class Grid {
public:
    Grid() = default;

    int dim() const { return dim_; }
    double half_width() const { return half_width_; }
    int points_per_axis() const { return points_per_axis_; }
    double spacing() const { return spacing_; }
    double cell_volume() const { return cell_volume_; }
    Boundary boundary() const { return boundary_; }
    std::size_t size() const { return size_; }

    double axis_coordinate(int i) const { return -half_width_ + (i + 0.5) * spacing_; }
    std::array<int, 3> multi_index(std::size_t flat) const;
    std::size_t flat_index(const std::array<int, 3>& idx) const;
    Point coordinates(std::size_t flat) const;

    /// Euclidean distance on Dirichlet grids, torus distance on periodic grids.
    double distance(const Point& a, const Point& b) const;
    double distance(std::size_t i, std::size_t j) const { return distance(coordinates(i), coordinates(j)); }

    /// Flat index of the neighbour `offset` cells along `axis`, or -1 when
    /// that falls outside a Dirichlet box (periodic grids wrap).
    long neighbor(std::size_t flat, int axis, int offset) const;

    /// True when every coordinate of the point satisfies |x_d| <= fraction * L.
    bool in_inner_box(std::size_t flat, double fraction = 0.5) const;

    bool same_layout(const Grid& other) const;

    friend Grid build_grid(int n, double half_width, int points_per_axis, Boundary bc);

private:
    int dim_ = 1;
    double half_width_ = 1.0;
    int points_per_axis_ = 8;
    double spacing_ = 0.25;
    double cell_volume_ = 0.25;
    Boundary boundary_ = Boundary::dirichlet;
    std::size_t size_ = 8;
};

Grid build_grid(int n, double half_width, int points_per_axis, Boundary bc);

/// One real value per grid point.
class GridFunction {
public:
    GridFunction() = default;
    explicit GridFunction(const Grid& grid, double fill = 0.0) : grid_(grid), values_(grid.size(), fill) {}
    GridFunction(const Grid& grid, std::vector<double> values);

    template <class F>
    static GridFunction sample(const Grid& grid, F&& f) {
        GridFunction out(grid);
        for (std::size_t i = 0; i < grid.size(); ++i) out.values_[i] = f(grid.coordinates(i));
        return out;
    }

    const Grid& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }
    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }

    GridFunction& operator+=(const GridFunction& o);
    GridFunction& operator-=(const GridFunction& o);
    GridFunction& operator*=(double c);

private:
    Grid grid_;
    std::vector<double> values_;
};

GridFunction operator+(GridFunction a, const GridFunction& b);
GridFunction operator-(GridFunction a, const GridFunction& b);
GridFunction operator*(double c, GridFunction a);

/// Midpoint rule: sum of f(x_i) h^n. Rejects non-finite values.
double grid_integrate(const GridFunction& f);
double inner_product(const GridFunction& f, const GridFunction& g);
double l2_norm(const GridFunction& f);
double max_abs(const GridFunction& f);

struct Ball {
    Point center{};
    double radius = 0.0;
    std::vector<std::size_t> members;
    bool contained = true;

    /// Discrete measure: member count times h^n.
    double measure(const Grid& grid) const { return static_cast<double>(members.size()) * grid.cell_volume(); }
};

/// Grid points with |x_i - center| < radius. Throws when the ball is empty.
Ball ball_points(const Grid& grid, const Point& center, double radius);

}  // namespace subheat
