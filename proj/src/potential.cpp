#include "subheat/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "subheat/error.hpp"
#include "subheat/quadrature.hpp"

namespace subheat {

namespace {

constexpr int kRadialIntervals = 512;

struct SphereRule {
    std::vector<Point> dirs;
    std::vector<double> weights;
};

const SphereRule& sphere_rule(int n) {
    static const SphereRule rules[3] = {
        [] {
            SphereRule r;
            r.dirs = {Point{1.0, 0.0, 0.0}, Point{-1.0, 0.0, 0.0}};
            r.weights = {1.0, 1.0};
            return r;
        }(),
        [] {
            SphereRule r;
            const int k = 96;
            for (int i = 0; i < k; ++i) {
                double th = 2.0 * std::numbers::pi * (i + 0.5) / k;
                r.dirs.push_back(Point{std::cos(th), std::sin(th), 0.0});
                r.weights.push_back(2.0 * std::numbers::pi / k);
            }
            return r;
        }(),
        [] {
            SphereRule r;
            auto gl = gauss_legendre(24, -1.0, 1.0);
            const int k = 48;
            for (std::size_t a = 0; a < gl.size(); ++a) {
                double z = gl.nodes[a];
                double s = std::sqrt(std::max(0.0, 1.0 - z * z));
                for (int i = 0; i < k; ++i) {
                    double ph = 2.0 * std::numbers::pi * (i + 0.5) / k;
                    r.dirs.push_back(Point{s * std::cos(ph), s * std::sin(ph), z});
                    r.weights.push_back(gl.weights[a] * 2.0 * std::numbers::pi / k);
                }
            }
            return r;
        }(),
    };
    return rules[n - 1];
}

double norm(const Point& x, int n) {
    double s = 0.0;
    for (int d = 0; d < n; ++d) s += x[d] * x[d];
    return std::sqrt(s);
}

// ∫_0^R s^{n-1} ∫_{S^{n-1}} g(x + s w) dw ds
template <class G>
double polar_integral(int n, const Point& x, double R, int intervals, G&& g) {
    const auto& sr = sphere_rule(n);
    auto shell = [&](double s) {
        double acc = 0.0;
        for (std::size_t k = 0; k < sr.dirs.size(); ++k) {
            Point y = x;
            for (int d = 0; d < n; ++d) y[d] += s * sr.dirs[k][d];
            acc += sr.weights[k] * g(y, s);
        }
        return acc * std::pow(s, n - 1);
    };
    return simpson(shell, 0.0, R, intervals);
}

}  // namespace

double sphere_area(int n) {
    switch (n) {
        case 1: return 2.0;
        case 2: return 2.0 * std::numbers::pi;
        case 3: return 4.0 * std::numbers::pi;
        default: fail_config("sphere_area", "dimension out of range");
    }
}

PotentialSpec PotentialSpec::constant(double c) {
    if (!(c >= 0.0) || !std::isfinite(c)) fail_config("PotentialSpec", "constant must be nonnegative");
    PotentialSpec s;
    if (c > 0.0) s.terms_.push_back({PotentialTerm::Kind::constant, c, 0.0, {}, {}});
    return s;
}

PotentialSpec PotentialSpec::power(double sigma, double coefficient) {
    if (!(sigma > 0.0)) fail_config("PotentialSpec", "power exponent must be positive");
    if (!(coefficient >= 0.0)) fail_config("PotentialSpec", "power coefficient must be nonnegative");
    PotentialSpec s;
    if (coefficient > 0.0) s.terms_.push_back({PotentialTerm::Kind::power, coefficient, sigma, {}, {}});
    return s;
}

PotentialSpec PotentialSpec::well(const Point& lo, const Point& hi, double height) {
    if (!(height >= 0.0)) fail_config("PotentialSpec", "well height must be nonnegative");
    for (int d = 0; d < 3; ++d)
        if (!(hi[d] > lo[d])) fail_config("PotentialSpec", "well box must have hi > lo");
    PotentialSpec s;
    if (height > 0.0) s.terms_.push_back({PotentialTerm::Kind::well, height, 0.0, lo, hi});
    return s;
}

PotentialSpec& PotentialSpec::operator+=(const PotentialSpec& o) {
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    return *this;
}

double PotentialSpec::operator()(const Point& x, int n) const {
    double v = 0.0;
    for (const auto& t : terms_) {
        switch (t.kind) {
            case PotentialTerm::Kind::constant: v += t.coefficient; break;
            case PotentialTerm::Kind::power: v += t.coefficient * std::pow(norm(x, n), t.sigma); break;
            case PotentialTerm::Kind::well: {
                bool inside = true;
                for (int d = 0; d < n; ++d) inside = inside && x[d] >= t.lo[d] && x[d] <= t.hi[d];
                if (inside) v += t.coefficient;
                break;
            }
        }
    }
    return v;
}

bool PotentialSpec::radial_about(const Point& x, int n) const {
    for (const auto& t : terms_) {
        if (t.kind == PotentialTerm::Kind::well) return false;
        if (t.kind == PotentialTerm::Kind::power && norm(x, n) > 0.0) return false;
    }
    return true;
}

double PotentialSpec::radial_value(const Point& x, int n, double s) const {
    Point y = x;
    y[0] += s;
    return (*this)(y, n);
}

std::string PotentialSpec::describe() const {
    if (terms_.empty()) return "zero";
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        const auto& t = terms_[i];
        if (i) os << " + ";
        switch (t.kind) {
            case PotentialTerm::Kind::constant: os << "constant:" << t.coefficient; break;
            case PotentialTerm::Kind::power:
                os << "power:" << t.sigma;
                if (t.coefficient != 1.0) os << ":" << t.coefficient;
                break;
            case PotentialTerm::Kind::well: os << "well:" << t.lo[0] << "," << t.hi[0] << "," << t.coefficient; break;
        }
    }
    return os.str();
}

double eval_potential(const PotentialSpec& spec, const Point& x, int n) { return spec(x, n); }

GridFunction sample_potential(const Grid& grid, const PotentialSpec& spec) {
    const int n = grid.dim();
    return GridFunction::sample(grid, [&](const Point& x) { return spec(x, n); });
}

PotentialSpec parse_potential(const std::string& text) {
    PotentialSpec out;
    std::stringstream ss(text);
    std::string item;
    bool any = false;
    while (std::getline(ss, item, '+')) {
        item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }),
                   item.end());
        if (item.empty()) fail_config("parse_potential", "empty term in '" + text + "'");
        any = true;
        auto colon = item.find(':');
        std::string kind = item.substr(0, colon);
        std::string args = colon == std::string::npos ? "" : item.substr(colon + 1);
        auto number = [&](const std::string& s) {
            try {
                std::size_t pos = 0;
                double v = std::stod(s, &pos);
                if (pos != s.size()) throw std::invalid_argument(s);
                return v;
            } catch (const std::exception&) {
                fail_config("parse_potential", "bad number '" + s + "' in '" + item + "'");
            }
        };
        if (kind == "zero") {
            if (!args.empty()) fail_config("parse_potential", "zero takes no parameters");
        } else if (kind == "constant") {
            out += PotentialSpec::constant(args.empty() ? 1.0 : number(args));
        } else if (kind == "power") {
            auto c2 = args.find(':');
            double sigma = number(args.substr(0, c2));
            double coef = c2 == std::string::npos ? 1.0 : number(args.substr(c2 + 1));
            out += PotentialSpec::power(sigma, coef);
        } else if (kind == "well") {
            std::vector<double> v;
            std::stringstream as(args);
            std::string tok;
            while (std::getline(as, tok, ',')) v.push_back(number(tok));
            if (v.size() != 3) fail_config("parse_potential", "well needs lo,hi,height");
            out += PotentialSpec::well(Point{v[0], v[0], v[0]}, Point{v[1], v[1], v[1]}, v[2]);
        } else {
            fail_config("parse_potential", "kind '" + kind + "' not in catalog");
        }
    }
    if (!any) fail_config("parse_potential", "empty potential");
    return out;
}

double ball_integral(const PotentialSpec& spec, int n, const Point& x, double r) {
    if (spec.is_zero()) return 0.0;
    if (spec.radial_about(x, n)) {
        auto f = [&](double s) { return spec.radial_value(x, n, s) * std::pow(s, n - 1); };
        return sphere_area(n) * simpson(f, 0.0, r, kRadialIntervals);
    }
    // term by term: constants and |x|^2 have exact ball moments
    double total = 0.0;
    PotentialSpec rest;
    const double vol = sphere_area(n) * std::pow(r, n) / n;
    for (const auto& t : spec.terms()) {
        if (t.kind == PotentialTerm::Kind::constant) {
            total += t.coefficient * vol;
        } else if (t.kind == PotentialTerm::Kind::power && t.sigma == 2.0) {
            double x2 = norm(x, n) * norm(x, n);
            total += t.coefficient * (x2 * vol + sphere_area(n) * std::pow(r, n + 2) / (n + 2));
        } else if (t.kind == PotentialTerm::Kind::power) {
            rest += PotentialSpec::power(t.sigma, t.coefficient);
        } else {
            rest += PotentialSpec::well(t.lo, t.hi, t.coefficient);
        }
    }
    if (!rest.is_zero())
        total += polar_integral(n, x, r, kRadialIntervals, [&](const Point& y, double) { return rest(y, n); });
    return total;
}

double rho_functional(const PotentialSpec& spec, int n, const Point& x, double r) {
    return std::pow(r, 2 - n) * ball_integral(spec, n, x, r);
}

RhoResult compute_rho(const PotentialSpec& spec, const Grid& grid, const Point& x, double tol) {
    if (!(tol > 0.0)) fail_config("compute_rho", "tolerance must be positive");
    RhoResult res;
    if (spec.is_zero()) return res;
    const int n = grid.dim();
    auto F = [&](double r) { return rho_functional(spec, n, x, r); };
    double lo = grid.spacing();
    double hi = 2.0 * grid.half_width() * std::sqrt(static_cast<double>(n));
    double fhi = F(hi);
    if (fhi <= 1.0) {
        res.rho = hi;
        res.functional = fhi;
        res.box_limited = true;
        return res;
    }
    int it = 0;
    while (F(lo) > 1.0) {
        lo *= 0.5;
        if (++it > 200) fail_numerical("compute_rho", "could not bracket rho from below");
    }
    for (it = 0; it < 200; ++it) {
        if (hi - lo <= tol * std::max(1.0, lo)) break;
        double mid = 0.5 * (lo + hi);
        if (F(mid) <= 1.0)
            lo = mid;
        else
            hi = mid;
    }
    if (hi - lo > tol * std::max(1.0, lo)) fail_numerical("compute_rho", "bisection did not converge in 200 steps");
    res.rho = 0.5 * (lo + hi);
    res.functional = F(res.rho);
    res.iterations = it;
    return res;
}

AuxFunction compute_aux(const PotentialSpec& spec, const Grid& grid, double tol) {
    AuxFunction aux;
    aux.grid = grid;
    aux.tol = tol;
    aux.rho.assign(grid.size(), std::numeric_limits<double>::infinity());
    aux.box_limited.assign(grid.size(), 0);
    if (spec.is_zero()) return aux;
    const long N = static_cast<long>(grid.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (long i = 0; i < N; ++i) {
        auto r = compute_rho(spec, grid, grid.coordinates(static_cast<std::size_t>(i)), tol);
        aux.rho[i] = r.rho;
        aux.box_limited[i] = r.box_limited ? 1 : 0;
    }
    return aux;
}

ReverseHolderResult reverse_holder_constant(const PotentialSpec& spec, const Grid& grid, double q,
                                            const std::vector<Ball>& balls) {
    if (!(q > 1.0)) fail_config("reverse_holder_constant", "q must exceed 1");
    if (balls.empty()) fail_config("reverse_holder_constant", "empty ball sample");
    const int n = grid.dim();
    ReverseHolderResult res;
    bool any = false;
    for (const auto& b : balls) {
        if (!b.contained) fail_config("reverse_holder_constant", "ball not contained in the box");
        if (b.members.size() < 32) fail_config("reverse_holder_constant", "ball has fewer than 32 grid points");
        double avg = 0.0, avg_q = 0.0;
        if (spec.radial_about(b.center, n)) {
            double vol = sphere_area(n) * std::pow(b.radius, n) / n;
            auto f1 = [&](double s) { return spec.radial_value(b.center, n, s) * std::pow(s, n - 1); };
            auto fq = [&](double s) { return std::pow(spec.radial_value(b.center, n, s), q) * std::pow(s, n - 1); };
            avg = sphere_area(n) * simpson(f1, 0.0, b.radius, kRadialIntervals) / vol;
            avg_q = sphere_area(n) * simpson(fq, 0.0, b.radius, kRadialIntervals) / vol;
        } else {
            for (auto i : b.members) {
                double v = spec(grid.coordinates(i), n);
                avg += v;
                avg_q += std::pow(v, q);
            }
            avg /= static_cast<double>(b.members.size());
            avg_q /= static_cast<double>(b.members.size());
        }
        if (!(avg > 0.0)) {
            ++res.excluded;
            continue;
        }
        any = true;
        res.c_best = std::max(res.c_best, std::pow(avg_q, 1.0 / q) / avg);
    }
    if (!any) fail_numerical("reverse_holder_constant", "every sampled ball has zero average");
    res.holds = std::isfinite(res.c_best);
    return res;
}

AuxLemmaReport check_aux_lemmas(const PotentialSpec& spec, const Grid& grid, const AuxSamples& s) {
    AuxLemmaReport rep;
    if (spec.is_zero()) {
        rep.skipped = true;
        rep.reason = "rho undefined";
        return rep;
    }
    const int n = grid.dim();
    const double L = grid.half_width();

    for (const auto& x : s.points) {
        for (double r : s.radii) {
            bool inside = true;
            for (int d = 0; d < n; ++d) inside = inside && std::abs(x[d]) + 2.0 * r <= L;
            if (!inside) continue;
            double a = ball_integral(spec, n, x, r);
            if (a > 0.0) rep.doubling_constant = std::max(rep.doubling_constant, ball_integral(spec, n, x, 2.0 * r) / a);
        }
        for (double r : s.radii)
            for (double R : s.radii) {
                if (!(r < R)) continue;
                double big = std::pow(R, 2 - n) * ball_integral(spec, n, x, R);
                if (!(big > 0.0)) continue;
                double small = std::pow(r, 2 - n) * ball_integral(spec, n, x, r);
                rep.scaling_ratio = std::max(rep.scaling_ratio, small / (std::pow(r / R, 2.0 - n / s.q) * big));
            }
    }

    std::vector<double> rho(s.points.size());
    for (std::size_t i = 0; i < s.points.size(); ++i) rho[i] = compute_rho(spec, grid, s.points[i]).rho;
    for (std::size_t i = 0; i < s.points.size(); ++i)
        for (std::size_t j = 0; j < s.points.size(); ++j) {
            if (i == j) continue;
            double d = 0.0;
            for (int k = 0; k < n; ++k) d += (s.points[i][k] - s.points[j][k]) * (s.points[i][k] - s.points[j][k]);
            // use both orientations so the constant is symmetric in (x, y)
            if (std::sqrt(d) > std::max(rho[i], rho[j])) continue;
            rep.comparability = std::max({rep.comparability, rho[i] / rho[j], rho[j] / rho[i]});
            ++rep.pairs_used;
        }

    const double delta0 = std::min(1.0, 2.0 - n / s.q);
    std::vector<double> lx, ly;
    struct Large {
        double u, v;
    };
    std::vector<Large> large;
    for (std::size_t i = 0; i < s.points.size(); ++i) {
        for (double t : s.times) {
            double R = std::sqrt(40.0 * t / s.gauss_c);
            double g = polar_integral(n, s.points[i], R, 2048, [&](const Point& y, double r) {
                           return std::exp(-s.gauss_c * r * r / t) * spec(y, n);
                       }) /
                       std::pow(t, 0.5 * n);
            double u = std::sqrt(t) / rho[i];
            double v = g * t;
            if (!(v > 0.0)) continue;
            if (u < 1.0) {
                rep.gaussian_small = std::max(rep.gaussian_small, v / std::pow(u, delta0));
            } else {
                large.push_back({u, v});
                lx.push_back(std::log(u));
                ly.push_back(std::log(v));
            }
        }
    }
    if (lx.size() >= 2) {
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            mx += lx[i];
            my += ly[i];
        }
        mx /= lx.size();
        my /= ly.size();
        double sxx = 0.0, sxy = 0.0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            sxx += (lx[i] - mx) * (lx[i] - mx);
            sxy += (lx[i] - mx) * (ly[i] - my);
        }
        rep.gaussian_exponent = sxx > 0.0 ? sxy / sxx : 0.0;
    } else {
        rep.gaussian_exponent = 2.0;
    }
    for (const auto& p : large)
        rep.gaussian_large = std::max(rep.gaussian_large, p.v / std::pow(p.u, rep.gaussian_exponent));
    return rep;
}

}  // namespace subheat
