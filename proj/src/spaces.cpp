#include "subheat/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <boost/math/special_functions/gamma.hpp>

#include "subheat/error.hpp"
#include "subheat/frac_derivative.hpp"
#include "subheat/quadrature.hpp"

namespace subheat {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double unit_ball_volume(int n) { return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0); }

std::vector<std::size_t> inner_points(const Grid& g, double inner) {
    std::vector<std::size_t> pts;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g.in_inner_box(i, inner)) pts.push_back(i);
    return pts;
}

bool inside(const Grid& g, const Point& c, double r, double inner) {
    for (int d = 0; d < g.dim(); ++d)
        if (std::abs(c[d]) + r > inner * g.half_width() + 1e-12) return false;
    return true;
}

std::size_t nearest_index(const Grid& g, const Point& p) {
    std::array<int, 3> idx{0, 0, 0};
    for (int d = 0; d < g.dim(); ++d) {
        int i = static_cast<int>(std::floor((p[d] + g.half_width()) / g.spacing()));
        idx[d] = std::clamp(i, 0, g.points_per_axis() - 1);
    }
    return g.flat_index(idx);
}

Eigen::VectorXd coefficients(const SpectralDecomposition& dec, const GridFunction& f) {
    if (f.size() != dec.size()) fail_config("spaces", "function does not live on the decomposition's grid");
    Eigen::Map<const Eigen::VectorXd> fv(f.values().data(), static_cast<Eigen::Index>(f.size()));
    return dec.phi.transpose() * fv * dec.grid.cell_volume();
}

void require_no_zero_mode(const SpectralDecomposition& dec, const Eigen::VectorXd& c, const char* where) {
    if (!dec.has_zero_mode) return;
    double scale = c.norm();
    for (std::size_t k = 0; k < dec.size() && dec.lambda[k] == 0.0; ++k)
        if (std::abs(c(static_cast<Eigen::Index>(k))) > 1e-10 * (scale > 0.0 ? scale : 1.0))
            fail_config(where, "function has a zero-mode component; project it out first");
}

// Φ (m(λ_k, t_j) c_k)_{kj}
Eigen::MatrixXd spectral_field(const SpectralDecomposition& dec, const Eigen::VectorXd& c, const std::vector<double>& t,
                               const std::function<double(double, double)>& m) {
    const auto K = static_cast<Eigen::Index>(dec.size());
    const auto J = static_cast<Eigen::Index>(t.size());
    Eigen::MatrixXd C(K, J);
    for (Eigen::Index j = 0; j < J; ++j)
        for (Eigen::Index k = 0; k < K; ++k) C(k, j) = m(dec.lambda[k], t[j]) * c(k);
    return dec.phi * C;
}

double d_multiplier(double l, double t, double alpha, double beta) {
    if (l == 0.0) return 0.0;
    double s = t * std::pow(l, alpha);
    return std::pow(s, beta) * std::exp(-s);
}

}  // namespace

BmoBreakdown bmo_breakdown(const GridFunction& f, const BmoParams& params, const AuxFunction& rho) {
    const Grid& g = f.grid();
    if (!(params.gamma > 0.0 && params.gamma <= 1.0)) fail_config("bmo_norm", "gamma must lie in (0,1]");
    if (rho.rho.size() != g.size()) fail_config("bmo_norm", "rho does not match the grid");
    for (double v : f.values())
        if (!std::isfinite(v)) fail_config("bmo_norm", "function is not finite");
    const int n = g.dim();
    const double rmax = params.inner * g.half_width();
    const auto radii = log_spaced(1.5 * g.spacing(), rmax, params.radii);
    BmoBreakdown out;
    bool any = false;
    for (std::size_t ci : inner_points(g, params.inner)) {
        const Point c = g.coordinates(ci);
        std::vector<double> rs = radii;
        if (std::isfinite(rho[ci])) rs.push_back(rho[ci]);
        for (double r : rs) {
            if (!inside(g, c, r, params.inner)) continue;
            Ball b = ball_points(g, c, r);
            any = true;
            const double meas = b.measure(g);
            const bool small = r < rho[ci];
            double mean = 0.0;
            if (small) {
                for (auto i : b.members) mean += f[i];
                mean /= static_cast<double>(b.members.size());
            }
            double osc = 0.0;
            for (auto i : b.members) osc += std::abs(f[i] - mean);
            osc *= g.cell_volume();
            double v = osc / std::pow(meas, 1.0 + params.gamma / n);
            if (small)
                out.small = std::max(out.small, v);
            else
                out.large = std::max(out.large, v);
        }
    }
    if (!any) fail_config("bmo_norm", "no admissible ball in the inner box");
    out.total = std::max(out.small, out.large);
    return out;
}

double bmo_norm(const GridFunction& f, const BmoParams& params, const AuxFunction& rho) {
    return bmo_breakdown(f, params, rho).total;
}

double lipschitz_norm(const GridFunction& f, double gamma, const AuxFunction& rho, double inner) {
    if (!(gamma > 0.0 && gamma <= 1.0)) fail_config("lipschitz_norm", "gamma must lie in (0,1]");
    const Grid& g = f.grid();
    const auto pts = inner_points(g, inner);
    double holder = 0.0, size = 0.0;
#pragma omp parallel for schedule(dynamic, 8) reduction(max : holder, size)
    for (std::size_t a = 0; a < pts.size(); ++a) {
        const std::size_t i = pts[a];
        if (std::isfinite(rho[i])) size = std::max(size, std::abs(f[i]) / std::pow(rho[i], gamma));
        for (std::size_t b = a + 1; b < pts.size(); ++b) {
            const std::size_t j = pts[b];
            holder = std::max(holder, std::abs(f[i] - f[j]) / std::pow(g.distance(i, j), gamma));
        }
    }
    return std::max(holder, size);
}

Atom make_atom(const Grid& grid, const Point& center, double radius, double gamma, const AuxFunction& rho,
               AtomKind kind) {
    if (!(gamma > 0.0 && gamma <= 1.0)) fail_config("make_atom", "gamma must lie in (0,1]");
    const std::size_t ci = nearest_index(grid, center);
    const Point c = grid.coordinates(ci);
    const double rc = rho[ci];
    if (!(radius > 0.0)) fail_config("make_atom", "radius must be positive");
    if (radius > rc) fail_config("make_atom", "radius exceeds rho at the centre");
    if (kind == AtomKind::plain && radius < rc / 4.0)
        fail_config("make_atom", "plain atoms need r >= rho/4; smaller balls require cancellation");
    Atom at;
    at.ball = ball_points(grid, c, radius);
    if (!at.ball.contained) fail_config("make_atom", "ball leaves the box");
    at.p = grid.dim() / (grid.dim() + gamma);
    at.cancels = kind == AtomKind::oscillating;
    at.a = GridFunction(grid);
    for (auto i : at.ball.members) {
        Point x = grid.coordinates(i);
        double q = grid.distance(x, c) / radius;
        double bump = 1.0 - q * q;
        at.a[i] = kind == AtomKind::oscillating ? bump * (x[0] - c[0]) / radius : bump;
    }
    if (at.cancels) {
        double mean = 0.0;
        for (auto i : at.ball.members) mean += at.a[i];
        mean /= static_cast<double>(at.ball.members.size());
        for (auto i : at.ball.members) at.a[i] -= mean;
    }
    double mx = max_abs(at.a);
    if (!(mx > 0.0)) fail_config("make_atom", "ball too small to carry an atom, refine the grid");
    at.a *= std::pow(at.ball.measure(grid), -1.0 / at.p) / mx;
    return at;
}

TimeGrid make_time_grid(const SpectralDecomposition& dec, double alpha, double beta, int points) {
    if (!(alpha > 0.0 && alpha < 1.0)) fail_config("make_time_grid", "alpha must lie in (0,1)");
    if (!(beta > 0.0)) fail_config("make_time_grid", "beta must be positive");
    const double lmax = dec.lambda_max(), lmin = dec.lambda_min_positive();
    if (!(lmin > 0.0)) fail_config("make_time_grid", "no positive eigenvalue");
    constexpr double eps = 1e-8;
    const double total = std::tgamma(2.0 * beta) / std::pow(2.0, 2.0 * beta);
    // ∫_0^{s0} s^{2β-1} e^{-2s} ds <= s0^{2β}/2β and the upper tail is an incomplete Gamma
    const double s0 = std::pow(2.0 * beta * eps * total, 0.5 / beta);
    const double s1 = 0.5 * boost::math::gamma_q_inv(2.0 * beta, eps);
    const double t0 = s0 / std::pow(lmax, alpha), t1 = s1 / std::pow(lmin, alpha);
    const double span = std::log(t1 / t0);
    if (points <= 0) points = std::max(16, static_cast<int>(std::ceil(span / 0.35)) + 1);
    if (points < 2) fail_config("make_time_grid", "need at least two times");
    TimeGrid tg;
    tg.t = log_spaced(t0, t1, points);
    const double du = span / (points - 1);
    tg.w.assign(points, du);
    tg.w.front() *= 0.5;
    tg.w.back() *= 0.5;
    tg.tail_bound = 2.0 * eps;
    return tg;
}

SpaceTimeField d_field(const SpectralDecomposition& dec, double alpha, double beta, const GridFunction& f,
                       const TimeGrid& tg) {
    auto c = coefficients(dec, f);
    SpaceTimeField F;
    F.grid = dec.grid;
    F.t = tg.t;
    F.w = tg.w;
    F.values = spectral_field(dec, c, tg.t, [alpha, beta](double l, double t) { return d_multiplier(l, t, alpha, beta); });
    return F;
}

GridFunction g_function(const SpectralDecomposition& dec, double alpha, double beta, const GridFunction& f,
                        const TimeGrid& tg) {
    require_no_zero_mode(dec, coefficients(dec, f), "g_function");
    auto F = d_field(dec, alpha, beta, f, tg);
    GridFunction out(dec.grid);
    for (Eigen::Index i = 0; i < F.values.rows(); ++i) {
        double s = 0.0;
        for (Eigen::Index j = 0; j < F.values.cols(); ++j) s += F.w[j] * F.values(i, j) * F.values(i, j);
        out[static_cast<std::size_t>(i)] = std::sqrt(s);
    }
    return out;
}

GridFunction area_function(const SpectralDecomposition& dec, double alpha, double beta, const GridFunction& f,
                           const TimeGrid& tg) {
    require_no_zero_mode(dec, coefficients(dec, f), "area_function");
    auto F = d_field(dec, alpha, beta, f, tg);
    const Grid& g = dec.grid;
    const int n = g.dim(), M = g.points_per_axis();
    const double h = g.spacing(), cell = g.cell_volume(), omega = unit_ball_volume(n);
    const auto J = F.values.cols();
    GridFunction out(g);
#pragma omp parallel for schedule(dynamic, 4)
    for (std::size_t x = 0; x < g.size(); ++x) {
        const auto ix = g.multi_index(x);
        double total = 0.0;
        for (Eigen::Index j = 0; j < J; ++j) {
            const double T = std::pow(F.t[j], 0.5 / alpha);
            const double v0 = F.values(static_cast<Eigen::Index>(x), j);
            if (T <= h) {
                // cone holds the single column y = x; use the continuum cone volume
                total += F.w[j] * omega * v0 * v0;
                continue;
            }
            const int reach = std::min(static_cast<int>(std::ceil(T / h)), M);
            double s = 0.0;
            std::array<int, 3> iy{0, 0, 0};
            auto scan = [&](auto&& self, int d, double d2) -> void {
                if (d < 0) {
                    if (d2 < T * T) {
                        double v = F.values(static_cast<Eigen::Index>(g.flat_index(iy)), j);
                        s += v * v;
                    }
                    return;
                }
                for (int o = -reach; o <= reach; ++o) {
                    int k = ix[d] + o;
                    if (g.boundary() == Boundary::periodic) {
                        if (2 * std::abs(o) > M) continue;
                        k = ((k % M) + M) % M;
                    } else if (k < 0 || k >= M) {
                        continue;
                    }
                    iy[d] = k;
                    self(self, d - 1, d2 + o * o * h * h);
                }
            };
            scan(scan, n - 1, 0.0);
            total += F.w[j] * s * cell / std::pow(T, n);
        }
        out[x] = std::sqrt(total);
    }
    return out;
}

double carleson_norm(const SpaceTimeField& field, double kappa, const std::vector<CarlesonBox>& boxes) {
    if (boxes.empty()) fail_config("carleson_norm", "no admissible ball");
    const auto N = field.values.rows(), J = field.values.cols();
    if (static_cast<Eigen::Index>(field.t.size()) != J || static_cast<Eigen::Index>(field.w.size()) != J)
        fail_config("carleson_norm", "field times and weights disagree");
    // cum(i, j) = Σ_{j' < j} w_j' F(i, j')
    Eigen::MatrixXd cum = Eigen::MatrixXd::Zero(N, J + 1);
    for (Eigen::Index j = 0; j < J; ++j) cum.col(j + 1) = cum.col(j) + field.w[j] * field.values.col(j);
    const double cell = field.grid.cell_volume();
    double best = 0.0;
    for (const auto& box : boxes) {
        auto jmax = static_cast<Eigen::Index>(std::upper_bound(field.t.begin(), field.t.end(), box.height) - field.t.begin());
        double nu = 0.0;
        for (auto i : box.ball.members) nu += cum(static_cast<Eigen::Index>(i), jmax);
        nu *= cell;
        best = std::max(best, nu / std::pow(box.ball.measure(field.grid), kappa));
    }
    if (!std::isfinite(best)) fail_numerical("carleson_norm", "non-finite Carleson ratio");
    return best;
}

std::vector<CarlesonBox> carleson_boxes(const Grid& grid, double alpha, int radii, double inner) {
    std::vector<CarlesonBox> boxes;
    const auto rs = log_spaced(1.5 * grid.spacing(), inner * grid.half_width(), radii);
    for (std::size_t ci : inner_points(grid, inner)) {
        const Point c = grid.coordinates(ci);
        for (double r : rs) {
            if (!inside(grid, c, r, inner)) continue;
            boxes.push_back({ball_points(grid, c, r), std::pow(r, 2.0 * alpha)});
        }
    }
    if (boxes.empty()) fail_config("carleson_boxes", "no admissible ball");
    return boxes;
}

double reproducing_constant(double beta) { return std::pow(2.0, 2.0 * beta) / std::tgamma(2.0 * beta); }
double duality_constant(double beta) { return std::tgamma(2.0 * beta) / std::pow(2.0, 2.0 * beta); }

namespace {
// Σ_j w_j m(λ, t_j)² per eigenvalue
std::vector<double> squared_symbol(const SpectralDecomposition& dec, double alpha, double beta, const TimeGrid& tg) {
    std::vector<double> out(dec.size(), 0.0);
    for (std::size_t k = 0; k < dec.size(); ++k)
        for (std::size_t j = 0; j < tg.t.size(); ++j) {
            double m = d_multiplier(dec.lambda[k], tg.t[j], alpha, beta);
            out[k] += tg.w[j] * m * m;
        }
    return out;
}
}  // namespace

double reproducing_check(const SpectralDecomposition& dec, double alpha, double beta, const GridFunction& f,
                         const TimeGrid& tg) {
    auto c = coefficients(dec, f);
    require_no_zero_mode(dec, c, "reproducing_check");
    const double fn = l2_norm(f);
    if (!(fn > 0.0)) fail_config("reproducing_check", "f vanishes");
    auto sym = squared_symbol(dec, alpha, beta, tg);
    const double cab = reproducing_constant(beta);
    Eigen::VectorXd d(c.size());
    for (Eigen::Index k = 0; k < c.size(); ++k) d(k) = (cab * sym[k] - 1.0) * c(k);
    if (dec.has_zero_mode)
        for (std::size_t k = 0; k < dec.size() && dec.lambda[k] == 0.0; ++k) d(static_cast<Eigen::Index>(k)) = 0.0;
    // the reconstruction is Φ(c·sym·c_ab); its L² distance to f is the coefficient-space norm
    Eigen::VectorXd r = dec.phi * d;
    return std::sqrt(r.squaredNorm() * dec.grid.cell_volume()) / fn;
}

PairingResult duality_pairing_check(const GridFunction& f, const GridFunction& a, const SpectralDecomposition& dec,
                                    double alpha, double beta, const TimeGrid& tg) {
    auto cf = coefficients(dec, f), ca = coefficients(dec, a);
    if (dec.has_zero_mode)
        for (std::size_t k = 0; k < dec.size() && dec.lambda[k] == 0.0; ++k) {
            cf(static_cast<Eigen::Index>(k)) = 0.0;
            ca(static_cast<Eigen::Index>(k)) = 0.0;
        }
    PairingResult res;
    const double pair = cf.dot(ca);
    if (std::abs(pair) <= 1e-12 * std::max(cf.norm() * ca.norm(), 1e-300)) {
        res.orthogonal = true;
        return res;
    }
    // ∬ F G dx dt/t computed on the field values
    auto F = spectral_field(dec, cf, tg.t, [alpha, beta](double l, double t) { return d_multiplier(l, t, alpha, beta); });
    auto G = spectral_field(dec, ca, tg.t, [alpha, beta](double l, double t) { return d_multiplier(l, t, alpha, beta); });
    double lhs = 0.0;
    for (Eigen::Index j = 0; j < F.cols(); ++j) lhs += tg.w[j] * F.col(j).dot(G.col(j));
    lhs *= dec.grid.cell_volume();
    res.ratio = lhs / (duality_constant(beta) * pair);
    return res;
}

double NormSet::get(int k) const {
    switch (k) {
        case 1: return n1;
        case 2: return n2;
        case 3: return n3;
        case 4: return n4;
        case 5: return n5;
        default: fail_config("NormSet::get", "index must be 1..5");
    }
}

NormSet norm_set(const std::string& name, const GridFunction& f, const SpectralDecomposition& dec,
                 const AuxFunction& rho, const EquivalenceParams& p, const TimeGrid& tg) {
    const Grid& g = dec.grid;
    const int n = g.dim();
    const double a = p.alpha, b = p.beta, gam = p.gamma;
    NormSet ns;
    ns.name = name;
    BmoParams bp;
    bp.gamma = gam;
    ns.n1 = bmo_norm(f, bp, rho);

    auto c = coefficients(dec, f);
    auto D = spectral_field(dec, c, tg.t, [a, b](double l, double t) { return d_multiplier(l, t, a, b); });
    for (std::size_t j = 0; j < tg.t.size(); ++j)
        ns.n2 = std::max(ns.n2, std::pow(tg.t[j], -gam / (2.0 * a)) * D.col(static_cast<Eigen::Index>(j)).cwiseAbs().maxCoeff());

    const double kappa = 1.0 + 2.0 * gam / n;
    const auto boxes = carleson_boxes(g, a);
    SpaceTimeField F{g, tg.t, tg.w, D.cwiseAbs2()};
    ns.n3 = std::sqrt(carleson_norm(F, kappa, boxes));

    // semigroup and the ∂_t^{1/2α} component of ∇_α
    auto U = spectral_field(dec, c, tg.t, [a](double l, double t) { return std::exp(-t * std::pow(l, a)); });
    auto Tm = spectral_field(dec, c, tg.t, [a](double l, double t) { return std::sqrt(l) * std::exp(-t * std::pow(l, a)); });
    Eigen::MatrixXd nu(static_cast<Eigen::Index>(g.size()), static_cast<Eigen::Index>(tg.t.size()));
    for (std::size_t j = 0; j < tg.t.size(); ++j) {
        const auto J = static_cast<Eigen::Index>(j);
        GridFunction u(g);
        for (std::size_t i = 0; i < g.size(); ++i) u[i] = U(static_cast<Eigen::Index>(i), J);
        auto grad = gradient(u);
        const double T = std::pow(tg.t[j], 0.5 / a);
        double sup = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            double gn = grad.norm(i), tv = Tm(static_cast<Eigen::Index>(i), J);
            sup = std::max(sup, std::sqrt(gn * gn + tv * tv));
            // |t ∇ e^{-t^{2α} L^α} f|² with the spatial scale t = s^{1/2α}
            nu(static_cast<Eigen::Index>(i), J) = T * T * gn * gn;
        }
        ns.n4 = std::max(ns.n4, std::pow(tg.t[j], -gam / (2.0 * a)) * T * sup);
    }
    std::vector<double> w5(tg.w.size());
    for (std::size_t j = 0; j < tg.w.size(); ++j) w5[j] = tg.w[j] / (2.0 * a);  // dt/t = ds/(2α s)
    SpaceTimeField N5{g, tg.t, w5, nu};
    ns.n5 = std::sqrt(carleson_norm(N5, kappa, boxes));
    for (double v : {ns.n1, ns.n2, ns.n3, ns.n4, ns.n5})
        if (!std::isfinite(v)) fail_numerical("norm_set", name + ": non-finite norm");
    return ns;
}

std::vector<SuiteMember> equivalence_suite(const SpectralDecomposition& dec, const AuxFunction& rho, double gamma,
                                           std::uint64_t seed, int size) {
    const Grid& g = dec.grid;
    const double L = g.half_width();
    std::vector<SuiteMember> out;
    const double centers[] = {0.0, 0.3, -0.25, 0.1, 0.2, -0.15};
    const double radii[] = {0.25, 0.2, 0.15, 0.08};
    for (int k = 0; k < 4; ++k) {
        Point c{centers[k] * L, 0.0, 0.0};
        const double R = radii[k] * L;
        auto f = GridFunction::sample(g, [&](const Point& x) {
            double d = g.distance(x, c);
            return d < R ? std::pow(d, gamma) - std::pow(R, gamma) : 0.0;
        });
        out.push_back({"profile" + std::to_string(k), std::move(f)});
    }
    for (int k = 0; k < 3; ++k) {
        Point c{centers[k + 3] * L, 0.0, 0.0};
        const std::size_t ci = nearest_index(g, c);
        double r = std::min(rho[ci], L / 8.0) / (1 << k);
        r = std::max(r, 2.5 * g.spacing());
        if (r > rho[ci]) r = rho[ci];
        out.push_back({"atom" + std::to_string(k), make_atom(g, c, r, gamma, rho, AtomKind::oscillating).a});
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::size_t first = 0;
    while (first < dec.size() && dec.lambda[first] == 0.0) ++first;
    for (int k = 0; static_cast<int>(out.size()) < size; ++k) {
        GridFunction f(g);
        const std::size_t modes = std::min<std::size_t>(8, dec.size() - first);
        for (std::size_t m = 0; m < modes; ++m) {
            double a = normal(rng) / std::sqrt(static_cast<double>(modes));
            for (std::size_t i = 0; i < g.size(); ++i)
                f[i] += a * dec.phi(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(first + m));
        }
        out.push_back({"random" + std::to_string(k), std::move(f)});
    }
    out.resize(static_cast<std::size_t>(size));
    return out;
}

EquivalenceTable equivalence_experiment(const std::vector<SuiteMember>& suite, const SpectralDecomposition& dec,
                                        const AuxFunction& rho, const EquivalenceParams& params) {
    if (!(params.gamma > 0.0 && params.gamma < std::min(2.0 * params.alpha, 2.0 * params.alpha * params.beta)))
        fail_config("equivalence_experiment", "gamma must lie in (0, min{2 alpha, 2 alpha beta})");
    auto tg = make_time_grid(dec, params.alpha, params.beta);
    EquivalenceTable table;
    for (const auto& m : suite) {
        auto ns = norm_set(m.name, m.f, dec, rho, params, tg);
        if (!(ns.n1 > 0.0)) {
            table.excluded.push_back(m.name);
            continue;
        }
        table.rows.push_back(ns);
    }
    if (table.rows.empty()) fail_numerical("equivalence_experiment", "every suite member has zero BMO norm");
    for (int a = 1; a <= 5; ++a)
        for (int b = a + 1; b <= 5; ++b) {
            RatioRange rr{a, b, kInf, 0.0};
            for (const auto& r : table.rows) {
                double q = r.get(a) / r.get(b);
                rr.lo = std::min(rr.lo, q);
                rr.hi = std::max(rr.hi, q);
            }
            table.ranges.push_back(rr);
            table.c_star = std::max({table.c_star, rr.hi, 1.0 / rr.lo});
        }
    return table;
}

}  // namespace subheat
