#include "subheat/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "subheat/error.hpp"

namespace subheat {

Grid build_grid(int n, double half_width, int points_per_axis, Boundary bc) {
    if (n < 1 || n > 3) fail_config("build_grid", "dimension must be 1, 2 or 3, got " + std::to_string(n));
    if (!(half_width > 0.0) || !std::isfinite(half_width)) fail_config("build_grid", "half_width must be positive");
    if (points_per_axis < 8 || points_per_axis % 2 != 0)
        fail_config("build_grid", "M must be even and >= 8, got " + std::to_string(points_per_axis));
    Grid g;
    g.dim_ = n;
    g.half_width_ = half_width;
    g.points_per_axis_ = points_per_axis;
    g.spacing_ = 2.0 * half_width / points_per_axis;
    g.cell_volume_ = std::pow(g.spacing_, n);
    g.boundary_ = bc;
    std::size_t size = 1;
    for (int d = 0; d < n; ++d) size *= static_cast<std::size_t>(points_per_axis);
    g.size_ = size;
    return g;
}

std::array<int, 3> Grid::multi_index(std::size_t flat) const {
    std::array<int, 3> idx{0, 0, 0};
    const auto m = static_cast<std::size_t>(points_per_axis_);
    for (int d = 0; d < dim_; ++d) {
        idx[d] = static_cast<int>(flat % m);
        flat /= m;
    }
    return idx;
}

std::size_t Grid::flat_index(const std::array<int, 3>& idx) const {
    std::size_t flat = 0;
    const auto m = static_cast<std::size_t>(points_per_axis_);
    for (int d = dim_ - 1; d >= 0; --d) flat = flat * m + static_cast<std::size_t>(idx[d]);
    return flat;
}

Point Grid::coordinates(std::size_t flat) const {
    Point p{0.0, 0.0, 0.0};
    auto idx = multi_index(flat);
    for (int d = 0; d < dim_; ++d) p[d] = axis_coordinate(idx[d]);
    return p;
}

double Grid::distance(const Point& a, const Point& b) const {
    double s = 0.0;
    const double period = 2.0 * half_width_;
    for (int d = 0; d < dim_; ++d) {
        double diff = std::abs(a[d] - b[d]);
        if (boundary_ == Boundary::periodic) {
            diff = std::fmod(diff, period);
            diff = std::min(diff, period - diff);
        }
        s += diff * diff;
    }
    return std::sqrt(s);
}

long Grid::neighbor(std::size_t flat, int axis, int offset) const {
    auto idx = multi_index(flat);
    int j = idx[axis] + offset;
    if (boundary_ == Boundary::periodic) {
        j %= points_per_axis_;
        if (j < 0) j += points_per_axis_;
    } else if (j < 0 || j >= points_per_axis_) {
        return -1;
    }
    idx[axis] = j;
    return static_cast<long>(flat_index(idx));
}

bool Grid::in_inner_box(std::size_t flat, double fraction) const {
    auto p = coordinates(flat);
    for (int d = 0; d < dim_; ++d)
        if (std::abs(p[d]) > fraction * half_width_ + 1e-12) return false;
    return true;
}

bool Grid::same_layout(const Grid& o) const {
    return dim_ == o.dim_ && points_per_axis_ == o.points_per_axis_ && half_width_ == o.half_width_ &&
           boundary_ == o.boundary_;
}

GridFunction::GridFunction(const Grid& grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size())
        fail_config("GridFunction", "value count " + std::to_string(values_.size()) + " does not match grid size " +
                                        std::to_string(grid_.size()));
}

GridFunction& GridFunction::operator+=(const GridFunction& o) {
    if (o.size() != size()) fail_config("GridFunction", "size mismatch");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& o) {
    if (o.size() != size()) fail_config("GridFunction", "size mismatch");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
}

GridFunction& GridFunction::operator*=(double c) {
    for (auto& v : values_) v *= c;
    return *this;
}

GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
GridFunction operator*(double c, GridFunction a) { return a *= c; }

double grid_integrate(const GridFunction& f) {
    double s = 0.0;
    for (double v : f.values()) {
        if (!std::isfinite(v)) fail_numerical("grid_integrate", "non-finite value");
        s += v;
    }
    return s * f.grid().cell_volume();
}

double inner_product(const GridFunction& f, const GridFunction& g) {
    if (f.size() != g.size()) fail_config("inner_product", "size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * g[i];
    return s * f.grid().cell_volume();
}

double l2_norm(const GridFunction& f) { return std::sqrt(inner_product(f, f)); }

double max_abs(const GridFunction& f) {
    double m = 0.0;
    for (double v : f.values()) m = std::max(m, std::abs(v));
    return m;
}

Ball ball_points(const Grid& grid, const Point& center, double radius) {
    if (!(radius > 0.0)) fail_config("ball_points", "radius must be positive");
    Ball b;
    b.center = center;
    b.radius = radius;
    // scan only the bounding index box
    const int n = grid.dim();
    const int m = grid.points_per_axis();
    const double h = grid.spacing();
    const double L = grid.half_width();
    std::array<int, 3> lo{0, 0, 0}, hi{0, 0, 0};
    for (int d = 0; d < n; ++d) {
        if (std::abs(center[d]) + radius > L) b.contained = false;
        int a = static_cast<int>(std::floor((center[d] - radius + L) / h - 0.5)) - 1;
        int c = static_cast<int>(std::ceil((center[d] + radius + L) / h - 0.5)) + 1;
        if (grid.boundary() == Boundary::periodic && c - a + 1 >= m) {
            a = 0;
            c = m - 1;
        }
        lo[d] = a;
        hi[d] = c;
    }
    std::array<int, 3> wrapped{0, 0, 0};
    auto visit = [&](auto&& self, int d) -> void {
        if (d < 0) {
            Point p{0.0, 0.0, 0.0};
            for (int k = 0; k < n; ++k) p[k] = grid.axis_coordinate(wrapped[k]);
            if (grid.distance(p, center) < radius) b.members.push_back(grid.flat_index(wrapped));
            return;
        }
        for (int i = lo[d]; i <= hi[d]; ++i) {
            int j = i;
            if (grid.boundary() == Boundary::periodic) {
                j %= m;
                if (j < 0) j += m;
            } else if (j < 0 || j >= m) {
                continue;
            }
            wrapped[d] = j;
            self(self, d - 1);
        }
    };
    visit(visit, n - 1);
    std::sort(b.members.begin(), b.members.end());
    b.members.erase(std::unique(b.members.begin(), b.members.end()), b.members.end());
    if (b.members.empty()) fail_config("ball_points", "empty ball: radius too small relative to h");
    return b;
}

}  // namespace subheat
