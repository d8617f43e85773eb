#include "subheat/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "subheat/error.hpp"
#include "subheat/quadrature.hpp"

namespace subheat {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string key_of(const char* kind, std::initializer_list<double> vals) {
    std::ostringstream os;
    os.precision(17);
    os << kind;
    for (double v : vals) os << ':' << v;
    return os.str();
}

std::array<double, 3> grad_vec(const Grid& g, const Eigen::MatrixXd& table, std::size_t i, std::size_t j) {
    std::array<double, 3> out{0.0, 0.0, 0.0};
    const double inv = 0.5 / g.spacing();
    for (int d = 0; d < g.dim(); ++d) {
        long p = g.neighbor(i, d, 1), m = g.neighbor(i, d, -1);
        double fp = p >= 0 ? table(p, static_cast<Eigen::Index>(j)) : 0.0;
        double fm = m >= 0 ? table(m, static_cast<Eigen::Index>(j)) : 0.0;
        out[d] = (fp - fm) * inv;
    }
    return out;
}

double vnorm(const std::array<double, 3>& a) { return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]); }

// Points of the test lattice on this grid, as flat indices.
std::vector<std::size_t> lattice_points(const Grid& g, const TestLattice& lat) {
    const double L = g.half_width(), h = g.spacing();
    std::vector<int> axis;
    // lattice coordinates start at the first cell centre of the coarsest grid
    const double x0 = -L + 0.5 * (lat.spacing / 4.0);
    for (int k = 0;; ++k) {
        double x = x0 + k * lat.spacing;
        if (x > L) break;
        if (std::abs(x) > lat.inner * L + 1e-12) continue;
        int i = static_cast<int>(std::floor((x + L) / h + 1e-9));
        i = std::clamp(i, 0, g.points_per_axis() - 1);
        axis.push_back(i);
    }
    std::vector<std::size_t> pts;
    const int n = g.dim();
    std::array<int, 3> idx{0, 0, 0};
    auto rec = [&](auto&& self, int d) -> void {
        if (d < 0) {
            pts.push_back(g.flat_index(idx));
            return;
        }
        for (int i : axis) {
            idx[d] = i;
            self(self, d - 1);
        }
    };
    rec(rec, n - 1);
    return pts;
}

struct Scanner {
    const Grid& grid;
    const std::vector<std::size_t>& pts;
    double noise_floor;
    bool swap;

    // obj(i, j) >= 0; logmaj(i, j) may be ±inf
    template <class Obj, class LogMaj>
    void run(PartResult& part, double t, double slice_max, Obj&& obj, LogMaj&& logmaj) const {
        const double floor = noise_floor * slice_max;
        for (std::size_t a : pts)
            for (std::size_t b : pts) {
                std::size_t i = swap ? b : a, j = swap ? a : b;
                double o = obj(i, j);
                if (!std::isfinite(o)) fail_numerical("certify", "non-finite kernel value");
                if (o < floor || o == 0.0) {
                    ++part.below_noise;
                    continue;
                }
                double lm = logmaj(i, j);
                if (lm == -kInf || std::isnan(lm)) {
                    ++part.excluded;
                    continue;
                }
                ++part.evaluated;
                double r = lm == kInf ? 0.0 : std::exp(std::log(o) - lm);
                if (r > part.c_meas) {
                    part.c_meas = r;
                    part.argmax_x = grid.coordinates(i);
                    part.argmax_y = grid.coordinates(j);
                    part.argmax_t = t;
                }
            }
    }

    // single-point objects (E8, ∫dy parts)
    template <class Obj, class LogMaj>
    void run_points(PartResult& part, double t, double slice_max, Obj&& obj, LogMaj&& logmaj) const {
        const double floor = noise_floor * slice_max;
        for (std::size_t i : pts) {
            double o = obj(i);
            if (!std::isfinite(o)) fail_numerical("certify", "non-finite value");
            if (o < floor || o == 0.0) {
                ++part.below_noise;
                continue;
            }
            double lm = logmaj(i);
            if (lm == -kInf || std::isnan(lm)) {
                ++part.excluded;
                continue;
            }
            ++part.evaluated;
            double r = lm == kInf ? 0.0 : std::exp(std::log(o) - lm);
            if (r > part.c_meas) {
                part.c_meas = r;
                part.argmax_x = grid.coordinates(i);
                part.argmax_y = grid.coordinates(i);
                part.argmax_t = t;
            }
        }
    }
};

// Free lattice heat kernel of -Δ_h along one axis at offset k cells:
// (1/h)(1/π) ∫_0^π e^{-z(1-cos θ)} cos(kθ) dθ, z = 2t/h².


}  // namespace

std::string estimate_name(EstimateId id) { return "E" + std::to_string(static_cast<int>(id)); }

EstimateId parse_estimate(const std::string& s) {
    if (s.size() >= 2 && (s[0] == 'E' || s[0] == 'e')) {
        int k = std::atoi(s.c_str() + 1);
        if (k >= 1 && k <= 12) return static_cast<EstimateId>(k);
    }
    fail_config("parse_estimate", "unknown estimate id '" + s + "'");
}

std::vector<EstimateId> all_estimates() {
    std::vector<EstimateId> out;
    for (int k = 1; k <= 12; ++k) out.push_back(static_cast<EstimateId>(k));
    return out;
}

Backend::Backend(const Grid& grid, const PotentialSpec& V, double q)
    : grid_(grid), V_(V), dec_(eigendecompose(assemble(grid, V))), aux_(compute_aux(V, grid)),
      q_(q > 0.0 ? q : 2.0 * grid.dim()) {
    if (!(q_ > 1.0)) fail_config("Backend", "q must exceed 1");
}

std::shared_ptr<const KernelSlice> Backend::cached(const std::string& key, const Multiplier& m, double t) {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = kernels_.find(key);
        if (it != kernels_.end()) return it->second;
    }
    auto K = std::make_shared<KernelSlice>(multiplier_kernel(dec_, m, t));
    std::lock_guard<std::mutex> lock(mu_);
    if (kernels_.size() > 256) kernels_.clear();
    kernels_.emplace(key, K);
    return K;
}

std::shared_ptr<const KernelSlice> Backend::heat(double t) {
    return cached(key_of("heat", {t}), multipliers::heat(t), t);
}
std::shared_ptr<const KernelSlice> Backend::frac_heat(double alpha, double t) {
    return cached(key_of("frac", {alpha, t}), multipliers::frac_heat(alpha, t), t);
}
std::shared_ptr<const KernelSlice> Backend::d_op(double alpha, double beta, double t) {
    return cached(key_of("D", {alpha, beta, t}), multipliers::frac_derivative(alpha, beta, t), t);
}
std::shared_ptr<const KernelSlice> Backend::d_tilde(double alpha, int m, double t) {
    return cached(key_of("Dt", {alpha, double(m), t}), multipliers::d_tilde(alpha, m, t), t);
}
std::shared_ptr<const KernelSlice> Backend::q_kernel(int m, double t) {
    return cached(key_of("Q", {double(m), t}), multipliers::q_kernel(m, t), t);
}

std::shared_ptr<const Eigen::MatrixXd> Backend::gradient_norms(const std::string& key, const KernelSlice& K) {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = gradients_.find(key);
        if (it != gradients_.end()) return it->second;
    }
    auto G = std::make_shared<Eigen::MatrixXd>(gradient_norm_table(K));
    std::lock_guard<std::mutex> lock(mu_);
    if (gradients_.size() > 128) gradients_.clear();
    gradients_.emplace(key, G);
    return G;
}

void Backend::clear_cache() {
    std::lock_guard<std::mutex> lock(mu_);
    kernels_.clear();
    gradients_.clear();
}

std::string TestLattice::describe() const {
    std::ostringstream os;
    os.precision(6);
    os << "spacing=" << spacing << " inner=" << inner << " times=" << times.size() << "[" << times.front() << ","
       << times.back() << "]";
    return os.str();
}

TestLattice default_lattice(const Grid& grid, double alpha) {
    TestLattice lat;
    const double h = grid.spacing(), L = grid.half_width();
    lat.spacing = 4.0 * h;
    lat.times = log_spaced(std::pow(h, 2.0 * alpha), std::pow(L / 4.0, 2.0 * alpha), 12);
    lat.heat_times = log_spaced(h * h, (L / 4.0) * (L / 4.0), 12);
    for (double s = h; s <= L / 4.0 + 1e-12; s *= 2.0) lat.shifts.push_back(s);
    return lat;
}

namespace {

struct Context {
    Backend& be;
    const EstimateParams& p;
    const TestLattice& lat;
    const Grid& g;
    const std::vector<std::size_t>& pts;
    Scanner scan;
    int n;
    double cell;

    double rho(std::size_t i) const { return be.aux()[i]; }
    double dist(std::size_t i, std::size_t j) const { return g.distance(i, j); }
    double log_pen(double T, std::size_t i, std::size_t j) const {
        return -p.N * std::log1p(T / rho(i) + T / rho(j));
    }
    // shift of x by s along axis 0; -1 when it leaves the box
    long shifted(std::size_t i, double s) const {
        int cells = static_cast<int>(std::lround(s / g.spacing()));
        return g.neighbor(i, 0, cells);
    }
};

double slice_max(const Eigen::MatrixXd& t) { return t.cwiseAbs().maxCoeff(); }

// sup_h |A(x+h, y) - A(x, y)| / (|h|/scale)^δ′, returns the log of the
// best ratio numerator against a shift-free majorant
template <class Diff>
void holder_scan(Context& c, PartResult& part, double t, double smax, double scale, double delta,
                 const std::function<bool(double, std::size_t, std::size_t)>& shift_ok, Diff&& diff,
                 const std::function<double(std::size_t, std::size_t)>& logmaj) {
    for (double s : c.lat.shifts) {
        auto obj = [&](std::size_t i, std::size_t j) -> double {
            if (!shift_ok(s, i, j)) return 0.0;
            long ip = c.shifted(i, s);
            if (ip < 0) return 0.0;
            double hs = std::lround(s / c.g.spacing()) * c.g.spacing();
            return diff(static_cast<std::size_t>(ip), i, j) / std::pow(hs / scale, delta);
        };
        PartResult tmp = part;
        tmp.below_noise = 0;
        tmp.evaluated = 0;
        tmp.excluded = 0;
        c.scan.run(tmp, t, smax, obj, logmaj);
        part.c_meas = tmp.c_meas;
        part.argmax_x = tmp.argmax_x;
        part.argmax_y = tmp.argmax_y;
        part.argmax_t = tmp.argmax_t;
        part.evaluated += tmp.evaluated;
        part.excluded += tmp.excluded;
    }
}

double default_delta(EstimateId id, const EstimateParams& p, int n, double q) {
    const double delta0 = std::min(1.0, 2.0 - n / q);
    const double delta = std::min(2.0 * p.alpha, delta0);
    double d = p.delta;
    switch (id) {
        case EstimateId::E2:
            if (d <= 0.0) d = 0.5 * delta0;
            if (!(d < delta0)) fail_config("certify", "E2 needs delta' < delta0");
            return d;
        case EstimateId::E3:
        case EstimateId::E10:
        case EstimateId::E11:
            if (d <= 0.0) d = std::min(0.5, delta);
            if (!(d <= delta + 1e-15)) fail_config("certify", "delta' must not exceed min{2 alpha, delta0}");
            return d;
        case EstimateId::E7:
            if (!(q > n)) fail_config("certify", "E7 needs q > n");
            return 1.0 - n / q;
        case EstimateId::E12:
            if (d <= 0.0) d = 0.5 * delta0;
            if (!(d < delta0)) fail_config("certify", "E12 needs delta' < delta0");
            return d;
        default: return d;
    }
}

void finish(BoundCertificate& cert) {
    bool any = false;
    for (const auto& part : cert.parts) {
        if (part.skipped || part.informational) continue;
        any = true;
        long total = part.evaluated + part.excluded;
        if (total > 0 && part.excluded > 0.01 * total)
            fail_numerical("certify", estimate_name(cert.id) + "/" + part.name + ": more than 1% of points have a zero majorant");
        if (!std::isfinite(part.c_meas)) fail_numerical("certify", estimate_name(cert.id) + ": non-finite C_meas");
        if (part.c_meas >= cert.c_meas) {
            cert.c_meas = part.c_meas;
            cert.argmax_x = part.argmax_x;
            cert.argmax_y = part.argmax_y;
            cert.argmax_t = part.argmax_t;
        }
    }
    if (!any) {
        cert.skipped = true;
        if (cert.reason.empty()) cert.reason = cert.parts.empty() ? "no parts" : cert.parts.front().reason;
    }
    cert.pass = !cert.skipped && std::isfinite(cert.c_meas) && cert.c_meas < cert.params.ceiling;
}

PartResult skipped_part(const std::string& name, const std::string& reason) {
    PartResult p;
    p.name = name;
    p.skipped = true;
    p.reason = reason;
    return p;
}

}  // namespace

BoundCertificate certify(EstimateId id, const EstimateParams& params, Backend& be,
                         const std::optional<TestLattice>& lattice) {
    const Grid& g = be.grid();
    if (!(params.alpha > 0.0 && params.alpha < 1.0)) fail_config("certify", "alpha must lie in (0,1)");
    if (!(params.N >= 0.0)) fail_config("certify", "N must be nonnegative");
    if (!(params.beta > 0.0)) fail_config("certify", "beta must be positive");
    if (params.m < 1) fail_config("certify", "m must be a positive integer");
    const TestLattice lat = lattice ? *lattice : default_lattice(g, params.alpha);
    for (double t : lat.times)
        if (std::pow(t, 0.5 / params.alpha) > g.half_width() / 4.0 * (1.0 + 1e-9))
            fail_config("certify", "t^{1/2alpha} exceeds L/4 on the lattice");

    BoundCertificate cert;
    cert.id = id;
    cert.params = params;
    cert.lattice = lat.describe();
    cert.delta_used = default_delta(id, params, g.dim(), be.q());

    const auto pts = lattice_points(g, lat);
    Context c{be, params, lat, g, pts, Scanner{g, pts, params.noise_floor, params.swap_xy}, g.dim(), g.cell_volume()};
    const double a = params.alpha;
    const int n = g.dim();
    const double gc = params.gauss_c;
    const double dl = cert.delta_used;
    const bool rho_inf = be.aux().undefined();

    auto frac_size = [&](double t, double T, double power, double tpow) {
        return [&, t, T, power, tpow](std::size_t i, std::size_t j) {
            return tpow * std::log(t) - (n + power) * std::log(T + c.dist(i, j)) + c.log_pen(T, i, j);
        };
    };
    auto heat_gauss = [&](double t, double extra_tpow) {
        return [&, t, extra_tpow](std::size_t i, std::size_t j) {
            double d = c.dist(i, j);
            return -(0.5 * n + extra_tpow) * std::log(t) - gc * d * d / t + c.log_pen(std::sqrt(t), i, j);
        };
    };
    auto integral_major = [&](double T, std::size_t i) {
        double u = T / c.rho(i);
        if (u == 0.0) return -kInf;
        return dl * std::log(u) - params.N * std::log1p(u);
    };
    auto row_integral = [&](const Eigen::MatrixXd& tab, std::size_t i) {
        return std::abs(tab.row(static_cast<Eigen::Index>(i)).sum() * c.cell);
    };

    switch (id) {
        case EstimateId::E1:
        case EstimateId::E9: {
            PartResult part;
            part.name = "size";
            const bool d = id == EstimateId::E9;
            for (double t : lat.times) {
                const double T = std::pow(t, 0.5 / a);
                auto K = d ? be.d_op(a, params.beta, t) : be.frac_heat(a, t);
                double sm = slice_max(K->table);
                c.scan.run(part, t, sm, [&](std::size_t i, std::size_t j) { return std::abs((*K)(i, j)); },
                           frac_size(t, T, 2.0 * a * (d ? params.beta : 1.0), d ? params.beta : 1.0));
            }
            cert.parts.push_back(part);
            break;
        }
        case EstimateId::E2:
        case EstimateId::E10: {
            PartResult part;
            part.name = "holder";
            const bool d = id == EstimateId::E10;
            for (double t : lat.times) {
                const double T = std::pow(t, 0.5 / a);
                auto K = d ? be.d_op(a, params.beta, t) : be.frac_heat(a, t);
                double sm = slice_max(K->table);
                holder_scan(c, part, t, sm, T, dl, [&](double s, std::size_t, std::size_t) { return s <= T * (1 + 1e-12); },
                            [&](std::size_t ip, std::size_t i, std::size_t j) { return std::abs((*K)(ip, j) - (*K)(i, j)); },
                            frac_size(t, T, 2.0 * a * (d ? params.beta : 1.0), d ? params.beta : 1.0));
            }
            cert.parts.push_back(part);
            break;
        }
        case EstimateId::E3: {
            PartResult size, hold, integ;
            size.name = "i";
            hold.name = "ii";
            integ.name = "iii";
            const int m = params.m;
            for (double t : lat.times) {
                const double T = std::pow(t, 0.5 / a);
                auto K = be.d_tilde(a, m, t);
                double sm = slice_max(K->table);
                auto maj = frac_size(t, T, 2.0 * a * m, m);
                c.scan.run(size, t, sm, [&](std::size_t i, std::size_t j) { return std::abs((*K)(i, j)); }, maj);
                holder_scan(c, hold, t, sm, T, dl, [&](double s, std::size_t, std::size_t) { return s <= T * (1 + 1e-12); },
                            [&](std::size_t ip, std::size_t i, std::size_t j) { return std::abs((*K)(ip, j) - (*K)(i, j)); },
                            maj);
                if (!rho_inf)
                    c.scan.run_points(integ, t, sm * c.cell, [&](std::size_t i) { return row_integral(K->table, i); },
                                      [&](std::size_t i) { return integral_major(T, i); });
            }
            cert.parts.push_back(size);
            cert.parts.push_back(hold);
            cert.parts.push_back(rho_inf ? skipped_part("iii", "rho = infinity, majorant vanishes") : integ);
            break;
        }
        case EstimateId::E4: {
            PartResult far, near;
            far.name = "sqrt(t)<=|x-y|";
            near.name = "sqrt(t)>|x-y|";
            for (double t : lat.heat_times) {
                auto K = be.heat(t);
                auto G = be.gradient_norms(key_of("gheat", {t}), *K);
                double sm = slice_max(K->table) / g.spacing();
                const double st = std::sqrt(t);
                auto obj_far = [&](std::size_t i, std::size_t j) { return c.dist(i, j) >= st ? (*G)(i, j) : 0.0; };
                auto obj_near = [&](std::size_t i, std::size_t j) { return c.dist(i, j) < st ? (*G)(i, j) : 0.0; };
                c.scan.run(far, t, sm, obj_far, heat_gauss(t, 0.5));
                c.scan.run(near, t, sm, obj_near, [&](std::size_t i, std::size_t j) {
                    double d = c.dist(i, j);
                    if (d == 0.0) return kInf;
                    return -std::log(d) + heat_gauss(t, 0.0)(i, j);
                });
            }
            cert.parts.push_back(far);
            cert.parts.push_back(near);
            break;
        }
        case EstimateId::E5: {
            PartResult part;
            part.name = "global";
            for (double t : lat.heat_times) {
                auto K = be.heat(t);
                auto G = be.gradient_norms(key_of("gheat", {t}), *K);
                double sm = slice_max(K->table) / g.spacing();
                c.scan.run(part, t, sm, [&](std::size_t i, std::size_t j) { return (*G)(i, j); },
                           [&](std::size_t i, std::size_t j) {
                               return -0.5 * (n + 1) * std::log(t) + c.log_pen(std::sqrt(t), i, j);
                           });
            }
            cert.parts.push_back(part);
            break;
        }
        case EstimateId::E6: {
            PartResult part;
            part.name = "gradient";
            for (double t : lat.times) {
                const double T = std::pow(t, 0.5 / a);
                auto K = be.frac_heat(a, t);
                auto G = be.gradient_norms(key_of("gfrac", {a, t}), *K);
                double sm = slice_max(K->table) / g.spacing() * T;
                c.scan.run(part, t, sm, [&](std::size_t i, std::size_t j) { return T * (*G)(i, j); },
                           frac_size(t, T, 2.0 * a, 1.0));
            }
            cert.parts.push_back(part);
            break;
        }
        case EstimateId::E7: {
            PartResult l37f, l37n, l38, p38;
            l37f.name = "lemma3.7/sqrt(t)<=|x-y|";
            l37n.name = "lemma3.7/sqrt(t)>=|x-y|";
            l38.name = "lemma3.8";
            p38.name = "prop3.8";
            auto shift_ok = [&](double s, std::size_t i, std::size_t j) { return s < c.dist(i, j) / 4.0; };
            auto gdiff = [&](const Eigen::MatrixXd& tab) {
                return [&g, &tab](std::size_t ip, std::size_t i, std::size_t j) {
                    auto a1 = grad_vec(g, tab, ip, j), a0 = grad_vec(g, tab, i, j);
                    return vnorm({a1[0] - a0[0], a1[1] - a0[1], a1[2] - a0[2]});
                };
            };
            for (double t : lat.heat_times) {
                auto K = be.heat(t);
                double sm = slice_max(K->table) / g.spacing();
                const double st = std::sqrt(t);
                // branch (a): (|h|/√t)^δ′ t^{-(n+1)/2} gauss
                holder_scan(c, l37f, t, sm, st, dl,
                            [&](double s, std::size_t i, std::size_t j) { return shift_ok(s, i, j) && st <= c.dist(i, j); },
                            gdiff(K->table), heat_gauss(t, 0.5));
                // branch (b): (|h|/|x-y|)^δ′ / (t^{n/2}|x-y|) gauss. The shift factor is
                // normalised by |x-y|, so rescale (|h|/√t)^δ′ to (|h|/|x-y|)^δ′ in the majorant.
                holder_scan(c, l37n, t, sm, st, dl,
                            [&](double s, std::size_t i, std::size_t j) { return shift_ok(s, i, j) && st >= c.dist(i, j); },
                            gdiff(K->table), [&](std::size_t i, std::size_t j) {
                                double d = c.dist(i, j);
                                if (d == 0.0) return kInf;
                                return -std::log(d) + dl * std::log(st / d) + heat_gauss(t, 0.0)(i, j);
                            });
                holder_scan(c, l38, t, sm, st, dl, shift_ok, gdiff(K->table), [&](std::size_t i, std::size_t j) {
                    return -0.5 * (n + 1) * std::log(t) + c.log_pen(st, i, j);
                });
            }
            for (double t : lat.times) {
                const double T = std::pow(t, 0.5 / a);
                auto K = be.frac_heat(a, t);
                double sm = slice_max(K->table) / g.spacing();
                holder_scan(c, p38, t, sm, T, dl, shift_ok, gdiff(K->table), [&](std::size_t i, std::size_t j) {
                    return -std::log(T) + std::log(t) - (n + 2.0 * a) * std::log(T + c.dist(i, j));
                });
            }
            cert.parts = {l37f, l37n, l38, p38};
            break;
        }
        case EstimateId::E8: {
            if (rho_inf) {
                cert.parts.push_back(skipped_part("one", "rho = infinity, majorant vanishes"));
                break;
            }
            PartResult part;
            part.name = "one";
            for (double t : lat.times) {
                const double T = std::pow(t, 0.5 / a);
                auto K = be.frac_heat(a, t);
                GridFunction u(g);
                for (std::size_t i = 0; i < g.size(); ++i) u[i] = K->table.row(static_cast<Eigen::Index>(i)).sum() * c.cell;
                auto G = gradient(u);
                c.scan.run_points(part, t, 1.0 / g.spacing() * T, [&](std::size_t i) { return T * G.norm(i); },
                                  [&](std::size_t i) {
                                      double r = T / c.rho(i);
                                      return std::min((1.0 + 2.0 * a) * std::log(r), -params.N * std::log(r));
                                  });
            }
            cert.parts.push_back(part);
            break;
        }
        case EstimateId::E11: {
            if (rho_inf) {
                cert.parts.push_back(skipped_part("integral", "rho = infinity, majorant vanishes"));
                break;
            }
            PartResult part;
            part.name = "integral";
            for (double t : lat.times) {
                const double T = std::pow(t, 0.5 / a);
                auto K = be.d_op(a, params.beta, t);
                c.scan.run_points(part, t, slice_max(K->table) * c.cell, [&](std::size_t i) { return row_integral(K->table, i); },
                                  [&](std::size_t i) { return integral_major(T, i); });
            }
            cert.parts.push_back(part);
            break;
        }
        case EstimateId::E12: {
            PartResult p28, p29, q1, q2, q3, gauss, glat;
            p28.name = "prop2.8";
            p29.name = "prop2.9";
            q1.name = "prop2.10i";
            q2.name = "prop2.10ii";
            q3.name = "prop2.10iii";
            gauss.name = "gauss";
            glat.name = "gauss-lattice";
            gauss.informational = glat.informational = true;
            const int m = params.m;
            for (double t : lat.heat_times) {
                const double st = std::sqrt(t);
                auto K = be.heat(t);
                auto Q = be.q_kernel(m, t);
                double sm = slice_max(K->table), smq = slice_max(Q->table);
                auto absK = [&](std::size_t i, std::size_t j) { return std::abs((*K)(i, j)); };
                c.scan.run(p28, t, sm, absK, heat_gauss(t, 0.0));
                auto lt = [&](double s, std::size_t, std::size_t) { return s < st; };
                holder_scan(c, p29, t, sm, st, dl, lt,
                            [&](std::size_t ip, std::size_t i, std::size_t j) { return std::abs((*K)(ip, j) - (*K)(i, j)); },
                            heat_gauss(t, 0.0));
                c.scan.run(q1, t, smq, [&](std::size_t i, std::size_t j) { return std::abs((*Q)(i, j)); }, heat_gauss(t, 0.0));
                holder_scan(c, q2, t, smq, st, dl, lt,
                            [&](std::size_t ip, std::size_t i, std::size_t j) { return std::abs((*Q)(ip, j) - (*Q)(i, j)); },
                            heat_gauss(t, 0.0));
                if (!rho_inf)
                    c.scan.run_points(q3, t, smq * c.cell, [&](std::size_t i) { return row_integral(Q->table, i); },
                                      [&](std::size_t i) { return integral_major(st, i); });
                c.scan.run(gauss, t, sm, absK, [&](std::size_t i, std::size_t j) {
                    double d = c.dist(i, j);
                    return -0.5 * n * std::log(4.0 * std::numbers::pi * t) - d * d / (4.0 * t);
                });
                FreeLatticeKernel lg(g, t);
                c.scan.run(glat, t, sm, absK, [&](std::size_t i, std::size_t j) { return std::log(lg(i, j)); });
            }
            cert.parts = {p28, p29, q1, q2, rho_inf ? skipped_part("prop2.10iii", "rho = infinity, majorant vanishes") : q3,
                          gauss, glat};
            break;
        }
    }
    finish(cert);
    return cert;
}

RefinementReport refinement_study(EstimateId id, const EstimateParams& params, std::vector<Backend*> backends) {
    if (backends.size() < 2) fail_config("refinement_study", "need at least two grids");
    const Grid& g0 = backends.front()->grid();
    for (std::size_t k = 1; k < backends.size(); ++k) {
        const Grid& a = backends[k - 1]->grid();
        const Grid& b = backends[k]->grid();
        if (a.dim() != b.dim() || a.half_width() != b.half_width() || a.boundary() != b.boundary() ||
            b.points_per_axis() <= a.points_per_axis() || b.points_per_axis() % a.points_per_axis() != 0)
            fail_config("refinement_study", "grids are not nested");
    }
    // the coarsest grid fixes the lattice for everybody
    TestLattice lat = default_lattice(g0, params.alpha);
    RefinementReport rep;
    std::vector<BoundCertificate> certs;
    for (auto* be : backends) {
        certs.push_back(certify(id, params, *be, lat));
        rep.c_meas.push_back(certs.back().c_meas);
        rep.points_per_axis.push_back(be->grid().points_per_axis());
    }
    const auto& fine = certs.back();
    const auto& coarse = certs[certs.size() - 2];
    rep.finest = fine;
    if (fine.skipped) {
        rep.ratio = 1.0;
        rep.pass = false;
        rep.finest.refine_ratio = std::nullopt;
        return rep;
    }
    rep.ratio = coarse.c_meas / fine.c_meas;
    for (std::size_t k = 0; k < fine.parts.size(); ++k)
        if (!fine.parts[k].skipped && fine.parts[k].c_meas > 0.0 && coarse.parts[k].c_meas > 0.0)
            rep.part_ratios.emplace_back(fine.parts[k].name, coarse.parts[k].c_meas / fine.parts[k].c_meas);
    rep.pass = rep.ratio >= 0.8 && rep.ratio <= 1.25 && fine.c_meas < params.ceiling && std::isfinite(fine.c_meas);
    rep.finest.refine_ratio = rep.ratio;
    rep.finest.pass = rep.pass;
    return rep;
}

SlopeFit decay_exponent_fit(EstimateId id, const EstimateParams& params, FitAxis axis, Backend& be,
                            const FitOptions& opt) {
    if (id != EstimateId::E1 && id != EstimateId::E9)
        fail_config("decay_exponent_fit", "only E1 and E9 have a fitted decay axis");
    const Grid& g = be.grid();
    const int n = g.dim();
    const double a = params.alpha;
    const bool d_op = id == EstimateId::E9;
    SlopeFit fit;
    std::vector<double> lx, ly;
    auto center_pair = [&](double d) {
        // x = -d/2, y = d/2 along axis 0, other coordinates at the centre cell
        const int M = g.points_per_axis();
        int k = std::max(1, static_cast<int>(std::lround(d / g.spacing())));
        std::array<int, 3> ix{0, 0, 0}, iy{0, 0, 0};
        for (int q = 1; q < n; ++q) ix[q] = iy[q] = M / 2;
        ix[0] = M / 2 - (k + 1) / 2;
        iy[0] = ix[0] + k;
        return std::pair{g.flat_index(ix), g.flat_index(iy)};
    };
    auto value = [&](double t, std::size_t i, std::size_t j) {
        auto w = multiplier_weights(be.dec(), d_op ? multipliers::frac_derivative(a, params.beta, t) : multipliers::frac_heat(a, t));
        // one entry only: sum_k w_k φ_k(i) φ_k(j)
        double s = 0.0;
        for (std::size_t k = 0; k < w.size(); ++k)
            s += w[k] * be.dec().phi(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) *
                 be.dec().phi(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
        return s;
    };
    switch (axis) {
        case FitAxis::spatial: {
            const double T = opt.scale;
            const double t = std::pow(T, 2.0 * a);
            fit.expected = -(n + 2.0 * a * (d_op ? params.beta : 1.0));
            double last = -1.0;
            for (double d : log_spaced(opt.lo * T, opt.hi * T, opt.samples)) {
                auto [i, j] = center_pair(d);
                double dd = g.distance(i, j);
                if (dd == last) continue;
                last = dd;
                double v = std::abs(value(t, i, j));
                if (v <= 0.0) continue;
                lx.push_back(std::log(dd));
                ly.push_back(std::log(v));
            }
            break;
        }
        case FitAxis::temporal: {
            const double d = opt.scale;
            auto [i, j] = center_pair(d);
            const double dd = g.distance(i, j);
            fit.expected = d_op ? params.beta : 1.0;
            for (double T : log_spaced(dd / opt.hi, dd / opt.lo, opt.samples)) {
                double t = std::pow(T, 2.0 * a);
                double v = std::abs(value(t, i, j));
                if (v <= 0.0) continue;
                lx.push_back(std::log(t));
                ly.push_back(std::log(v));
            }
            break;
        }
        case FitAxis::rho: {
            const auto& aux = be.aux();
            if (aux.undefined()) {
                fit.skipped = true;
                fit.reason = "rho undefined";
                return fit;
            }
            const double T = opt.scale;
            const double t = std::pow(T, 2.0 * a);
            fit.expected = -params.N;
            double rmin = kInf, rmax = 0.0;
            std::vector<std::size_t> pts;
            for (std::size_t i = 0; i < g.size(); ++i)
                if (g.in_inner_box(i)) {
                    pts.push_back(i);
                    rmin = std::min(rmin, aux[i]);
                    rmax = std::max(rmax, aux[i]);
                }
            if (rmax - rmin <= 1e-9 * rmax) {
                fit.skipped = true;
                fit.reason = "axis constant, skipped";
                return fit;
            }
            auto w = multiplier_weights(be.dec(), d_op ? multipliers::frac_derivative(a, params.beta, t) : multipliers::frac_heat(a, t));
            for (std::size_t k = 0; k < pts.size(); k += std::max<std::size_t>(1, pts.size() / 32)) {
                std::size_t i = pts[k];
                double v = std::abs(value(t, i, i));
                if (v <= 0.0) continue;
                lx.push_back(std::log(1.0 + 2.0 * T / aux[i]));
                ly.push_back(std::log(v));
            }
            break;
        }
    }
    fit.points = static_cast<int>(lx.size());
    if (fit.points < 6) fail_numerical("decay_exponent_fit", "fewer than 6 sample points");
    double mx = 0.0, my = 0.0;
    for (std::size_t k = 0; k < lx.size(); ++k) {
        mx += lx[k];
        my += ly[k];
    }
    mx /= lx.size();
    my /= ly.size();
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t k = 0; k < lx.size(); ++k) {
        sxx += (lx[k] - mx) * (lx[k] - mx);
        sxy += (lx[k] - mx) * (ly[k] - my);
        syy += (ly[k] - my) * (ly[k] - my);
    }
    if (sxx <= 0.0) {
        fit.skipped = true;
        fit.reason = "axis constant, skipped";
        return fit;
    }
    fit.slope = sxy / sxx;
    fit.r2 = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
    return fit;
}

}  // namespace subheat
