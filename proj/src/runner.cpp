#include "subheat/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <numbers>
#include <random>

#include "subheat/error.hpp"
#include "subheat/estimates.hpp"
#include "subheat/frac_derivative.hpp"
#include "subheat/potential.hpp"
#include "subheat/spaces.hpp"
#include "subheat/spectral.hpp"
#include "subheat/subordinator.hpp"

namespace subheat {

namespace {

class CsvWriter {
public:
    CsvWriter(const RunConfig& cfg, RunReport& report, const std::string& name, const std::string& header) {
        std::filesystem::create_directories(cfg.out);
        path_ = (std::filesystem::path(cfg.out) / name).string();
        out_.open(path_, std::ios::binary | std::ios::trunc);
        if (!out_) fail_config("csv", "cannot write '" + path_ + "'");
        out_ << "# config: " << cfg.describe() << '\n' << header << '\n';
        report.files.push_back(path_);
    }
    template <class... Ts>
    void row(const Ts&... cells) {
        bool first = true;
        ((out_ << (first ? "" : ",") << cell(cells), first = false), ...);
        out_ << '\n';
    }

private:
    static std::string cell(double v) { return format_double(v); }
    static std::string cell(int v) { return std::to_string(v); }
    static std::string cell(long v) { return std::to_string(v); }
    static std::string cell(std::size_t v) { return std::to_string(v); }
    static std::string cell(bool v) { return v ? "true" : "false"; }
    static std::string cell(const std::string& v) { return v; }
    static std::string cell(const char* v) { return v; }

    std::string path_;
    std::ofstream out_;
};

void add(RunReport& r, const std::string& name, double value, double tol, bool pass, const std::string& note = "") {
    r.checks.push_back({name, value, tol, pass, note});
    r.pass = r.pass && pass;
}

void write_checks(const RunConfig& cfg, RunReport& r, const std::string& file) {
    CsvWriter w(cfg, r, file, "check,value,tolerance,pass,note");
    for (const auto& c : r.checks) w.row(c.name, c.value, c.tolerance, c.pass, c.note);
}

Grid make_grid(const RunConfig& cfg, int M) { return build_grid(cfg.n, cfg.L, M, cfg.bc); }

std::string tag(double t) { return format_double(t); }

double max_rel_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    return (a - b).cwiseAbs().maxCoeff() / std::max(b.cwiseAbs().maxCoeff(), 1e-300);
}

// Positivity, symmetry, mass and Chapman-Kolmogorov of the heat kernel at t.
void kernel_axioms(RunReport& r, const SpectralDecomposition& dec, double t) {
    const Grid& g = dec.grid;
    auto K = multiplier_kernel(dec, multipliers::heat(t), t);
    auto K2 = multiplier_kernel(dec, multipliers::heat(2.0 * t), 2.0 * t);
    const std::string s = "t=" + tag(t);
    add(r, "heat_positivity " + s, K.table.minCoeff(), -1e-10, K.table.minCoeff() >= -1e-10);
    double sym = (K.table - K.table.transpose()).cwiseAbs().maxCoeff();
    add(r, "heat_symmetry " + s, sym, 1e-8, sym <= 1e-8);
    double mass = (K.table.rowwise().sum() * g.cell_volume()).maxCoeff();
    add(r, "heat_mass " + s, mass, 1.0 + 1e-8, mass <= 1.0 + 1e-8);
    Eigen::MatrixXd ck = K.table * K.table * g.cell_volume();
    double err = (ck - K2.table).cwiseAbs().maxCoeff();
    add(r, "chapman_kolmogorov " + s, err, 1e-6, err <= 1e-6);
}

double gaussian_excess(const SpectralDecomposition& dec, double t) {
    const Grid& g = dec.grid;
    auto K = multiplier_kernel(dec, multipliers::heat(t), t);
    double worst = -1e300;
    const double c = std::pow(4.0 * std::numbers::pi * t, -0.5 * g.dim());
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) {
            double d = g.distance(i, j);
            worst = std::max(worst, K(i, j) - c * std::exp(-d * d / (4.0 * t)));
        }
    return worst;
}

// max of K^L_t - K^{free lattice}_t
double lattice_excess(const SpectralDecomposition& dec, double t) {
    const Grid& g = dec.grid;
    auto K = multiplier_kernel(dec, multipliers::heat(t), t);
    FreeLatticeKernel F(g, t);
    double worst = -1e300;
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) worst = std::max(worst, K(i, j) - F(i, j));
    return worst;
}

RunReport run_kernels(const RunConfig& cfg) {
    RunReport r;
    const Grid g = make_grid(cfg, cfg.M);
    const auto V = parse_potential(cfg.potential);
    const auto dec = eigendecompose(assemble(g, V));
    const auto aux = compute_aux(V, g);
    {
        CsvWriter w(cfg, r, "rho.csv", "x_index,x0,rho,box_limited");
        for (std::size_t i = 0; i < g.size(); ++i) w.row(i, g.coordinates(i)[0], aux[i], aux.box_limited[i] != 0);
    }
    CsvWriter prof(cfg, r, "profile.csv", "t,x0,heat,frac,gauss");
    const std::size_t centre = g.flat_index({cfg.M / 2, cfg.M / 2, cfg.M / 2});
    for (double t : cfg.times) {
        auto H = multiplier_kernel(dec, multipliers::heat(t), t);
        auto F = multiplier_kernel(dec, multipliers::frac_heat(cfg.alpha, t), t);
        for (auto [name, K] : {std::pair{"heat_t", &H}, std::pair{"frac_t", &F}}) {
            CsvWriter w(cfg, r, std::string(name) + tag(t) + ".csv", "x_index,y_index,value");
            for (std::size_t i = 0; i < g.size(); ++i)
                for (std::size_t j = 0; j < g.size(); ++j) w.row(i, j, (*K)(i, j));
        }
        for (std::size_t i = 0; i < g.size(); ++i) {
            auto x = g.coordinates(i);
            bool on_axis = true;
            for (int d = 1; d < g.dim(); ++d) on_axis = on_axis && x[d] == g.coordinates(centre)[d];
            if (!on_axis) continue;
            double d2 = std::pow(g.distance(i, centre), 2);
            prof.row(t, x[0], H(i, centre), F(i, centre),
                     std::pow(4.0 * std::numbers::pi * t, -0.5 * g.dim()) * std::exp(-d2 / (4.0 * t)));
        }
        kernel_axioms(r, dec, t);
        auto S = subordinate_kernel(dec, cfg.alpha, t);
        double e = max_rel_diff(S.table, F.table);
        add(r, "two_route t=" + tag(t), e, 1e-5, e <= 1e-5);
    }
    write_checks(cfg, r, "kernel_checks.csv");
    return r;
}

RunReport run_verify(const RunConfig& cfg) {
    RunReport r;
    const auto V = parse_potential(cfg.potential);
    std::vector<int> Ms = cfg.refine;
    if (Ms.empty()) Ms = {cfg.M / 2, cfg.M};
    std::vector<std::unique_ptr<Backend>> owned;
    std::vector<Backend*> backends;
    for (int M : Ms) {
        owned.push_back(std::make_unique<Backend>(make_grid(cfg, M), V, cfg.q));
        backends.push_back(owned.back().get());
    }
    std::vector<EstimateId> ids;
    for (const auto& s : cfg.estimates) ids.push_back(parse_estimate(s));
    if (ids.empty()) ids = all_estimates();

    CsvWriter certs(cfg, r, "certificates.csv",
                    "id,alpha,beta,N,delta,C_meas,argmax_x,argmax_y,argmax_t,refine_ratio,pass");
    CsvWriter parts(cfg, r, "certificate_parts.csv",
                    "id,N,part,C_meas,evaluated,below_noise,excluded,skipped,informational,reason");
    for (EstimateId id : ids)
        for (double N : cfg.N) {
            EstimateParams p;
            p.alpha = cfg.alpha;
            p.beta = cfg.beta;
            p.N = N;
            p.delta = cfg.delta;
            auto rep = refinement_study(id, p, backends);
            const auto& c = rep.finest;
            const std::string pass = c.skipped ? "skipped" : (rep.pass ? "true" : "false");
            certs.row(estimate_name(id), cfg.alpha, cfg.beta, N, c.delta_used, c.c_meas, c.argmax_x[0], c.argmax_y[0],
                      c.argmax_t, c.skipped ? std::string("") : format_double(rep.ratio), pass);
            for (const auto& part : c.parts)
                parts.row(estimate_name(id), N, part.name, part.c_meas, part.evaluated, part.below_noise, part.excluded,
                          part.skipped, part.informational, part.reason);
            const std::string name = estimate_name(id) + " N=" + format_double(N);
            if (c.skipped)
                add(r, name, 0.0, 0.0, true, "skipped: " + c.reason);
            else
                add(r, name, rep.ratio, 1.25, rep.pass, "C_meas=" + format_double(c.c_meas));
        }
    CsvWriter fits(cfg, r, "decay_fits.csv", "id,axis,slope,expected,r2,points,skipped");
    Backend& fine = *backends.back();
    for (auto [id, axis, name] : {std::tuple{EstimateId::E1, FitAxis::spatial, "spatial"},
                                  std::tuple{EstimateId::E9, FitAxis::spatial, "spatial"},
                                  std::tuple{EstimateId::E9, FitAxis::temporal, "temporal"},
                                  std::tuple{EstimateId::E1, FitAxis::rho, "rho"}}) {
        EstimateParams p;
        p.alpha = cfg.alpha;
        p.beta = cfg.beta;
        p.N = cfg.N.back();
        FitOptions opt;
        if (axis == FitAxis::temporal) {
            opt.scale = 2.0;
            opt.lo = 8.0;
            opt.hi = 64.0;
        }
        auto f = decay_exponent_fit(id, p, axis, fine, opt);
        fits.row(estimate_name(id), name, f.slope, f.expected, f.r2, f.points, f.skipped ? f.reason : std::string(""));
    }
    return r;
}

GridFunction random_function(const SpectralDecomposition& dec, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    GridFunction f(dec.grid);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = normal(rng);
    const double mean = grid_integrate(f) / (static_cast<double>(f.size()) * dec.grid.cell_volume());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] -= mean;
    if (dec.has_zero_mode) {
        // project out the kernel of L
        for (std::size_t k = 0; k < dec.size() && dec.lambda[k] == 0.0; ++k) {
            auto phi = dec.mode(k);
            double c = inner_product(f, phi);
            for (std::size_t i = 0; i < f.size(); ++i) f[i] -= c * phi[i];
        }
    }
    return f;
}

RunReport run_spaces(const RunConfig& cfg) {
    RunReport r;
    const Grid g = make_grid(cfg, cfg.M);
    const auto V = parse_potential(cfg.potential);
    const auto dec = eigendecompose(assemble(g, V));
    const auto aux = compute_aux(V, g);
    const double a = cfg.alpha, b = cfg.beta;
    const auto tg = make_time_grid(dec, a, b);
    const double gc = std::pow(2.0, -b) * std::sqrt(std::tgamma(2.0 * b));
    std::mt19937_64 rng(cfg.seed);

    double eig = 0.0;
    std::size_t first = 0;
    while (first < dec.size() && dec.lambda[first] == 0.0) ++first;
    for (std::size_t k : {first, first + 1, first + dec.size() / 4, dec.size() - 1}) {
        auto phi = dec.mode(k);
        auto gg = g_function(dec, a, b, phi, tg);
        for (std::size_t i = 0; i < g.size(); ++i) eig = std::max(eig, std::abs(gg[i] - gc * std::abs(phi[i])) / max_abs(phi));
    }
    add(r, "g_eigen_identity", eig, 1e-6, eig <= 1e-6);

    double iso = 0.0, area = 0.0, repro = 0.0;
    for (int k = 0; k < 5; ++k) {
        auto f = random_function(dec, rng);
        iso = std::max(iso, std::abs(l2_norm(g_function(dec, a, b, f, tg)) / l2_norm(f) - gc));
        area = std::max(area, l2_norm(area_function(dec, a, b, f, tg)) / l2_norm(f));
        repro = std::max(repro, reproducing_check(dec, a, b, f, tg));
    }
    add(r, "g_isometry", iso, 1e-6, iso <= 1e-6);
    add(r, "area_l2_ratio", area, 4.0 * gc, area <= 4.0 * gc);
    add(r, "reproducing_residual", repro, 1e-4, repro <= 1e-4);

    auto f0 = random_function(dec, rng);
    double prev = 1e300;
    bool mono = true;
    for (int J : {16, 32, 64}) {
        double res = reproducing_check(dec, a, b, f0, make_time_grid(dec, a, b, J));
        mono = mono && res < prev;
        prev = res;
    }
    add(r, "reproducing_monotone_J16_32_64", prev, 0.0, mono);

    // random atoms inside the inner box
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto random_atom = [&]() {
        const double L = g.half_width();
        for (int attempt = 0; attempt < 1000; ++attempt) {
            Point c{0.0, 0.0, 0.0};
            for (int d = 0; d < g.dim(); ++d) c[d] = (unit(rng) - 0.5) * L;
            std::size_t ci = 0;
            {
                std::array<int, 3> idx{0, 0, 0};
                for (int d = 0; d < g.dim(); ++d)
                    idx[d] = std::clamp(static_cast<int>(std::floor((c[d] + L) / g.spacing())), 0, g.points_per_axis() - 1);
                ci = g.flat_index(idx);
            }
            double rmax = std::min(aux[ci], L / 4.0);
            double rmin = 2.5 * g.spacing();
            if (rmax < rmin) continue;
            double rad = rmin * std::pow(rmax / rmin, unit(rng));
            return make_atom(g, c, rad, cfg.gamma, aux, AtomKind::oscillating);
        }
        fail_config("spaces", "grid too coarse for atoms: 2.5 h exceeds min(rho, L/4) at every sampled centre");
    };
    double worst = 0.0;
    int good = 0;
    for (int draws = 0; good < 10 && draws < 100; ++draws) {
        auto f = random_function(dec, rng);
        auto at = random_atom();
        auto pr = duality_pairing_check(f, at.a, dec, a, b, tg);
        if (pr.orthogonal) continue;
        ++good;
        worst = std::max(worst, std::abs(pr.ratio - 1.0));
    }
    add(r, "duality_pairing", worst, 1e-3, worst <= 1e-3 && good == 10, std::to_string(good) + " pairs");

    CsvWriter atoms(cfg, r, "atoms.csv", "index,center_x0,radius,S_Lp");
    double smax = 0.0;
    for (int k = 0; k < 20; ++k) {
        auto at = random_atom();
        auto S = area_function(dec, a, b, at.a, tg);
        double s = 0.0;
        for (double v : S.values()) s += std::pow(std::abs(v), at.p);
        s = std::pow(s * g.cell_volume(), 1.0 / at.p);
        smax = std::max(smax, s);
        atoms.row(k, at.ball.center[0], at.ball.radius, s);
    }
    add(r, "atom_area_Lp_max", smax, 0.0, std::isfinite(smax));
    write_checks(cfg, r, "spaces.csv");
    return r;
}

RunReport run_equiv(const RunConfig& cfg) {
    RunReport r;
    const Grid g = make_grid(cfg, cfg.M);
    const auto V = parse_potential(cfg.potential);
    const auto dec = eigendecompose(assemble(g, V));
    const auto aux = compute_aux(V, g);
    EquivalenceParams p{cfg.alpha, cfg.beta, cfg.gamma};
    auto suite = equivalence_suite(dec, aux, cfg.gamma, cfg.seed);
    auto table = equivalence_experiment(suite, dec, aux, p);
    {
        CsvWriter w(cfg, r, "equivalence.csv", "name,N1,N2,N3,N4,N5");
        for (const auto& row : table.rows) w.row(row.name, row.n1, row.n2, row.n3, row.n4, row.n5);
        for (const auto& name : table.excluded) w.row(name, "excluded", "", "", "", "");
    }
    {
        CsvWriter w(cfg, r, "equivalence_ratios.csv", "a,b,lo,hi");
        for (const auto& rr : table.ranges) w.row(rr.a, rr.b, rr.lo, rr.hi);
    }
    add(r, "c_star", table.c_star, 100.0, table.c_star <= 100.0);
    auto tg = make_time_grid(dec, p.alpha, p.beta);
    double hom = 0.0;
    for (const auto& m : suite) {
        auto a = norm_set(m.name, m.f, dec, aux, p, tg);
        auto b = norm_set(m.name, 2.0 * m.f, dec, aux, p, tg);
        for (int k = 1; k <= 5; ++k)
            if (a.get(k) > 0.0) hom = std::max(hom, std::abs(b.get(k) / (2.0 * a.get(k)) - 1.0));
    }
    add(r, "homogeneity", hom, 1e-10, hom <= 1e-10);
    write_checks(cfg, r, "equiv_checks.csv");
    return r;
}

RunReport run_selftest(const RunConfig& cfg) {
    RunReport r;
    const Grid g = make_grid(cfg, cfg.M);
    const auto V = parse_potential(cfg.potential);
    const auto op = assemble(g, V);
    const auto dec = eigendecompose(op);
    auto dc = check_decomposition(op, dec);
    add(r, "eigen_orthonormality", dc.orthonormality, 1e-10, dc.orthonormality <= 1e-10);
    add(r, "eigen_residual", dc.residual, 1e-10, dc.residual <= 1e-10);
    for (double t : cfg.times) {
        kernel_axioms(r, dec, t);
        double lat = lattice_excess(dec, t);
        add(r, "lattice_gaussian_domination t=" + tag(t), lat, 1e-8, lat <= 1e-8);
        double ex = gaussian_excess(dec, t);
        add(r, "continuum_gaussian_excess t=" + tag(t), ex, 1e-8, true, "logged only, lattice kernels exceed the continuum Gaussian near the diagonal");
        auto F = multiplier_kernel(dec, multipliers::frac_heat(cfg.alpha, t), t);
        auto S = subordinate_kernel(dec, cfg.alpha, t);
        double e = max_rel_diff(S.table, F.table);
        add(r, "two_route t=" + tag(t), e, 1e-5, e <= 1e-5);
    }
    auto dr = density_selftest(cfg.alpha);
    add(r, "density_normalization", dr.normalization_defect, 1e-8, dr.normalization_defect <= 1e-8);
    add(r, "density_tail_slope", dr.tail_slope, 0.02, std::abs(dr.tail_slope + 1.0 + cfg.alpha) <= 0.02);
    SubordinatorDensity eta(cfg.alpha);
    double lap = 0.0;
    for (double l : {0.5, 1.0, 2.0}) lap = std::max(lap, std::abs(laplace_transform(eta, l) - std::exp(-std::pow(l, cfg.alpha))));
    add(r, "density_laplace", lap, 1e-6, lap <= 1e-6);
    for (double t : {0.5, 1.0, 2.0}) {
        auto q = d_operator_quadrature(dec, cfg.alpha, cfg.beta, t);
        auto m = d_operator(dec, cfg.alpha, cfg.beta, t);
        double e = max_rel_diff(q.table, m.table);
        add(r, "frac_derivative_routes t=" + tag(t), e, 1e-4, e <= 1e-4);
    }
    {
        Backend be(g, V, cfg.q);
        EstimateParams p;
        p.alpha = cfg.alpha;
        p.beta = cfg.beta;
        p.N = cfg.N.front();
        for (EstimateId id : all_estimates()) {
            auto c = certify(id, p, be);
            bool ok = c.skipped || (std::isfinite(c.c_meas) && c.pass);
            add(r, "certificate " + estimate_name(id), c.c_meas, p.ceiling, ok, c.skipped ? "skipped: " + c.reason : "");
        }
    }
    const auto tg = make_time_grid(dec, cfg.alpha, cfg.beta);
    std::mt19937_64 rng(cfg.seed);
    auto f = random_function(dec, rng);
    double gc = std::pow(2.0, -cfg.beta) * std::sqrt(std::tgamma(2.0 * cfg.beta));
    double iso = std::abs(l2_norm(g_function(dec, cfg.alpha, cfg.beta, f, tg)) / l2_norm(f) - gc);
    add(r, "g_isometry", iso, 1e-6, iso <= 1e-6);
    double rep = reproducing_check(dec, cfg.alpha, cfg.beta, f, tg);
    add(r, "reproducing_residual", rep, 1e-4, rep <= 1e-4);
    write_checks(cfg, r, "selftest.csv");
    return r;
}

}  // namespace

RunReport run(const RunConfig& cfg) {
    validate(cfg);
    RunReport r;
    switch (cfg.command) {
        case Command::kernels: r = run_kernels(cfg); break;
        case Command::verify: r = run_verify(cfg); break;
        case Command::spaces: r = run_spaces(cfg); break;
        case Command::equiv: r = run_equiv(cfg); break;
        case Command::selftest: r = run_selftest(cfg); break;
    }
    r.command = cfg.command;
    return r;
}

int exit_code(const RunReport& report) { return report.pass ? 0 : 1; }

}  // namespace subheat
