// Acceptance suite: one PASS/FAIL line per criterion, detail lines indented.
// Usage: acceptance [criterion ...]   (no arguments runs 1..14)
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "subheat/config.hpp"
#include "subheat/estimates.hpp"
#include "subheat/frac_derivative.hpp"
#include "subheat/potential.hpp"
#include "subheat/quadrature.hpp"
#include "subheat/runner.hpp"
#include "subheat/spaces.hpp"
#include "subheat/spectral.hpp"
#include "subheat/subordinator.hpp"

using namespace subheat;

namespace {

// pinned tolerances
constexpr double kPositivity = -1e-10;
constexpr double kSymmetry = 1e-8;
constexpr double kChapman = 1e-6;
constexpr double kMass = 1.0 + 1e-8;
constexpr double kGauss = 1e-8;
constexpr double kNormalization = 1e-8;
constexpr double kLaplace = 1e-6;
constexpr double kTailSlope = 0.02;
constexpr double kClosedForm = 1e-8;
constexpr double kTwoRoute = 1e-5;
constexpr double kPoisson = 1e-3;
constexpr double kFracRoute = 1e-4;
constexpr double kOrdinary = 1e-8;
constexpr double kRefineLo = 0.8, kRefineHi = 1.25;
constexpr double kCalibE1 = 0.02;
constexpr double kCalibE12 = 1e-6;
constexpr double kDecay = 0.05;
constexpr double kEigenIdentity = 1e-6;
constexpr double kIsometry = 1e-6;
constexpr double kReproducing = 1e-4;
constexpr double kPairing = 1e-3;
constexpr double kAreaFactor = 4.0;
constexpr double kCStar = 100.0;
constexpr double kHomogeneity = 1e-10;

constexpr int kM = 256;
constexpr double kL = 16.0;

struct Outcome {
    bool pass = true;
    std::string summary;
    std::vector<std::string> details;

    void check(bool ok, const std::string& line) {
        pass = pass && ok;
        details.push_back(std::string(ok ? "ok   " : "FAIL ") + line);
    }
    void info(const std::string& line) { details.push_back("info " + line); }
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

const std::vector<std::pair<std::string, PotentialSpec>>& potentials() {
    static const std::vector<std::pair<std::string, PotentialSpec>> v{
        {"V=0", PotentialSpec::zero()}, {"V=1", PotentialSpec::constant(1.0)}, {"V=|x|^2", PotentialSpec::power(2.0)}};
    return v;
}

const SpectralDecomposition& dirichlet(const std::string& name, const PotentialSpec& V, int M = kM) {
    static std::map<std::string, SpectralDecomposition> cache;
    const std::string key = name + "/" + std::to_string(M);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, eigendecompose(assemble(build_grid(1, kL, M, Boundary::dirichlet), V))).first;
    return it->second;
}

double max_rel(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    return (a - b).cwiseAbs().maxCoeff() / b.cwiseAbs().maxCoeff();
}

GridFunction random_mean_zero(const Grid& g, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    GridFunction f(g);
    double mean = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) mean += (f[i] = normal(rng));
    mean /= static_cast<double>(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] -= mean;
    return f;
}

Atom random_atom(const Grid& g, const AuxFunction& aux, double gamma, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double L = g.half_width();
    for (;;) {
        Point c{(unit(rng) - 0.5) * L, 0.0, 0.0};
        int idx = std::clamp(static_cast<int>(std::floor((c[0] + L) / g.spacing())), 0, g.points_per_axis() - 1);
        double rmax = std::min(aux[g.flat_index({idx, 0, 0})], L / 8.0);
        double rmin = 2.5 * g.spacing();
        if (rmax < rmin) continue;
        return make_atom(g, c, rmin * std::pow(rmax / rmin, unit(rng)), gamma, aux, AtomKind::oscillating);
    }
}

Outcome kernel_axioms() {
    Outcome o;
    for (const auto& [name, V] : potentials()) {
        const auto& dec = dirichlet(name, V);
        const Grid& g = dec.grid;
        for (double t : {0.25, 1.0, 4.0}) {
            auto K = multiplier_kernel(dec, multipliers::heat(t), t);
            auto K2 = multiplier_kernel(dec, multipliers::heat(2.0 * t), 2.0 * t);
            double pos = K.table.minCoeff();
            double sym = (K.table - K.table.transpose()).cwiseAbs().maxCoeff();
            double mass = (K.table.rowwise().sum() * g.cell_volume()).maxCoeff();
            double ck = (K.table * K.table * g.cell_volume() - K2.table).cwiseAbs().maxCoeff();
            o.check(pos >= kPositivity && sym <= kSymmetry && mass <= kMass && ck <= kChapman,
                    fmt("%s t=%g min=%.2e sym=%.2e mass=%.6f ck=%.2e", name.c_str(), t, pos, sym, mass, ck));
        }
    }
    o.summary = "heat kernel positivity, symmetry, mass, Chapman-Kolmogorov (Dirichlet, M=256)";
    return o;
}

Outcome gaussian_domination() {
    Outcome o;
    double worst = -1e300, worst_lattice = -1e300;
    for (const auto& [name, V] : potentials()) {
        const auto& dec = dirichlet(name, V);
        const Grid& g = dec.grid;
        for (double t : {0.25, 1.0, 4.0}) {
            auto K = multiplier_kernel(dec, multipliers::heat(t), t);
            FreeLatticeKernel F(g, t);
            const double c = std::pow(4.0 * std::numbers::pi * t, -0.5);
            double ex = -1e300, exl = -1e300;
            for (std::size_t i = 0; i < g.size(); ++i)
                for (std::size_t j = 0; j < g.size(); ++j) {
                    double d = g.distance(i, j);
                    ex = std::max(ex, K(i, j) - c * std::exp(-d * d / (4.0 * t)));
                    exl = std::max(exl, K(i, j) - F(i, j));
                }
            worst = std::max(worst, ex);
            worst_lattice = std::max(worst_lattice, exl);
            o.check(ex <= kGauss, fmt("%s t=%g max(K - G) = %.3e", name.c_str(), t, ex));
        }
    }
    o.info(fmt("free lattice kernel domination: max(K - K_free) = %.3e", worst_lattice));
    o.summary = fmt("K_t <= (4 pi t)^{-1/2} e^{-d^2/4t} + 1e-8, worst excess %.3e", worst);
    return o;
}

Outcome subordinator() {
    Outcome o;
    for (double a : {0.3, 0.5, 0.7, 0.8}) {
        auto r = density_selftest(a);
        SubordinatorDensity eta(a);
        double lap = 0.0;
        for (double l : {0.5, 1.0, 2.0}) lap = std::max(lap, std::abs(laplace_transform(eta, l) - std::exp(-std::pow(l, a))));
        bool slope_ok = std::abs(r.tail_slope + 1.0 + a) <= kTailSlope;
        o.check(r.normalization_defect <= kNormalization && lap <= kLaplace && slope_ok,
                fmt("alpha=%g norm=%.2e laplace=%.2e slope=%.4f (want %.2f)", a, r.normalization_defect, lap, r.tail_slope,
                    -1.0 - a));
    }
    SubordinatorDensity half(0.5);
    double gap = 0.0;
    for (double s : log_spaced(0.02, 100.0, 60)) {
        double general = s > half.crossover() ? half.series(s) : half.inversion(s);
        gap = std::max(gap, std::abs(general - half.closed_form_half(s)));
    }
    o.check(gap <= kClosedForm, fmt("alpha=1/2 closed form vs series/inversion: %.2e", gap));
    o.summary = "stable density normalization, Laplace transform, tail slope, closed form";
    return o;
}

Outcome two_route() {
    Outcome o;
    double worst = 0.0;
    for (const auto& [name, V] : potentials()) {
        const auto& dec = dirichlet(name, V);
        for (double a : {0.3, 0.5, 0.8})
            for (double t : {0.25, 1.0, 4.0}) {
                auto F = multiplier_kernel(dec, multipliers::frac_heat(a, t), t);
                auto S = subordinate_kernel(dec, a, t);
                double e = max_rel(S.table, F.table);
                worst = std::max(worst, e);
                o.check(e <= kTwoRoute, fmt("%s alpha=%g t=%g rel=%.2e", name.c_str(), a, t, e));
            }
    }
    o.summary = fmt("subordinated vs spectral fractional kernel, worst %.2e", worst);
    return o;
}

// max relative error against the periodized Poisson kernel on the inner half-box
double poisson_error(int M, double t) {
    const Grid g = build_grid(1, kL, M, Boundary::periodic);
    const auto dec = eigendecompose(assemble(g, PotentialSpec::zero()));
    const double L = g.half_width();
    auto K = multiplier_kernel(dec, multipliers::frac_heat(0.5, t), t);
    double e = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!g.in_inner_box(i)) continue;
        for (std::size_t j = 0; j < g.size(); ++j) {
            if (!g.in_inner_box(j)) continue;
            double d = g.coordinates(i)[0] - g.coordinates(j)[0];
            double P = std::sinh(std::numbers::pi * t / L) /
                       (std::cosh(std::numbers::pi * t / L) - std::cos(std::numbers::pi * d / L)) / (2.0 * L);
            e = std::max(e, std::abs(K(i, j) - P) / P);
        }
    }
    return e;
}

Outcome poisson() {
    Outcome o;
    // the error is O(h^2/t^2) at the diagonal; M = 1024 resolves t = 1
    constexpr int kPoissonM = 1024;
    double worst = 0.0;
    for (double t : {1.0, 2.0, 4.0}) {
        double e256 = poisson_error(kM, t), e512 = poisson_error(2 * kM, t);
        o.info(fmt("t=%g M=256 %.3e, M=512 %.3e, observed order %.2f", t, e256, e512, std::log2(e256 / e512)));
    }
    for (double t : {1.0, 2.0, 4.0}) {
        double e = poisson_error(kPoissonM, t);
        worst = std::max(worst, e);
        o.check(e <= kPoisson, fmt("M=%d t=%g max relative error %.3e", kPoissonM, t, e));
    }
    o.summary = fmt("periodic V=0, alpha=1/2 vs periodized (1/pi) t/(t^2+d^2), worst %.3e", worst);
    return o;
}

Outcome frac_derivative() {
    Outcome o;
    const auto& dec = dirichlet("V=1", PotentialSpec::constant(1.0));
    for (double b : {0.3, 0.5, 1.0, 1.5})
        for (double t : {0.5, 1.0, 2.0}) {
            double e = max_rel(d_operator_quadrature(dec, 0.5, b, t).table, d_operator(dec, 0.5, b, t).table);
            o.check(e <= kFracRoute, fmt("beta=%g t=%g rel=%.2e", b, t, e));
        }
    // β = 1 against -t d/dt e^{-tL^α}, whose multiplier is t λ^α e^{-tλ^α}
    double ord = 0.0;
    for (double t : {0.5, 1.0, 2.0}) {
        auto Q = d_operator_quadrature(dec, 0.5, 1.0, t);
        auto D = multiplier_kernel(dec, [t](double l) { return -t * (-std::sqrt(l)) * std::exp(-t * std::sqrt(l)); }, t);
        ord = std::max(ord, max_rel(Q.table, D.table));
    }
    o.check(ord <= kOrdinary, fmt("beta=1 vs ordinary derivative rel=%.2e", ord));
    o.summary = "quadrature vs multiplier route of t^beta d_t^beta e^{-tL^alpha}";
    return o;
}

Outcome certificates() {
    Outcome o;
    const Grid g128 = build_grid(1, kL, 128, Boundary::dirichlet), g256 = build_grid(1, kL, kM, Boundary::dirichlet);
    int refined = 0, skipped = 0;
    for (const auto& [name, V] : {std::pair{std::string("V=1"), PotentialSpec::constant(1.0)},
                                  std::pair{std::string("V=|x|^2"), PotentialSpec::power(2.0)}}) {
        Backend b1(g128, V), b2(g256, V);
        for (double a : {0.3, 0.5, 0.8})
            for (double N : {0.0, 1.0, 2.0})
                for (EstimateId id : all_estimates()) {
                    EstimateParams p;
                    p.alpha = a;
                    p.N = N;
                    auto rep = refinement_study(id, p, {&b1, &b2});
                    if (rep.finest.skipped) {
                        ++skipped;
                        o.info(fmt("%s %s alpha=%g N=%g skipped: %s", name.c_str(), estimate_name(id).c_str(), a, N,
                                   rep.finest.reason.c_str()));
                        continue;
                    }
                    ++refined;
                    bool ok = rep.pass && std::isfinite(rep.finest.c_meas);
                    if (!ok)
                        o.check(false, fmt("%s %s alpha=%g N=%g C=%.4g ratio=%.4f", name.c_str(), estimate_name(id).c_str(),
                                           a, N, rep.finest.c_meas, rep.ratio));
                }
            b1.clear_cache(), b2.clear_cache();
    }
    o.check(o.pass, fmt("%d refinement studies M=128/256 with ratio in [%.2f, %.2f] (%d skipped)", refined, kRefineLo,
                        kRefineHi, skipped));

    Backend free(g256, PotentialSpec::zero());
    EstimateParams p;
    p.alpha = 0.5;
    p.N = 0.0;
    auto e1 = certify(EstimateId::E1, p, free);
    const double two_pi = 2.0 / std::numbers::pi;
    o.check(std::abs(e1.c_meas / two_pi - 1.0) <= kCalibE1, fmt("E1 V=0 alpha=1/2 N=0: C_meas=%.5f, 2/pi=%.5f", e1.c_meas, two_pi));

    auto e12 = certify(EstimateId::E12, p, free);
    for (const auto& part : e12.parts) {
        if (part.name == "gauss")
            o.check(std::abs(part.c_meas - 1.0) <= kCalibE12,
                    fmt("E12 Gaussian case V=0: C_meas=%.8f at t=%.4g, d=%.4g", part.c_meas, part.argmax_t,
                        std::abs(part.argmax_x[0] - part.argmax_y[0])));
        if (part.name == "gauss-lattice")
            o.info(fmt("E12 against the free lattice kernel: C_meas=%.8f", part.c_meas));
    }
    o.summary = "bound certificates E1-E12, refinement stability and calibration";
    return o;
}

Outcome decay() {
    Outcome o;
    const Grid g = build_grid(1, 64.0, 512, Boundary::dirichlet);
    Backend be(g, PotentialSpec::zero());
    EstimateParams p;
    p.alpha = 0.5;
    p.beta = 1.0;
    FitOptions k_opt{0.5, 4.0, 32.0, 12};
    auto k = decay_exponent_fit(EstimateId::E1, p, FitAxis::spatial, be, k_opt);
    o.check(std::abs(k.slope / k.expected - 1.0) <= kDecay, fmt("K_{1/2,t} spatial slope %.4f (want %.2f)", k.slope, k.expected));
    FitOptions d_opt{0.25, 8.0, 64.0, 12};
    auto d = decay_exponent_fit(EstimateId::E9, p, FitAxis::spatial, be, d_opt);
    o.check(std::abs(d.slope / d.expected - 1.0) <= kDecay, fmt("D^1 spatial slope %.4f (want %.2f)", d.slope, d.expected));
    for (double a : {0.3, 0.8}) {
        p.alpha = a;
        auto f = decay_exponent_fit(EstimateId::E1, p, FitAxis::spatial, be, k_opt);
        o.info(fmt("alpha=%g K spatial slope %.4f (want %.2f)", a, f.slope, f.expected));
    }
    o.summary = "V=0 spatial tail slopes, L=64, M=512";
    return o;
}

struct SpaceSetup {
    Grid g = build_grid(1, kL, kM, Boundary::dirichlet);
    PotentialSpec V = PotentialSpec::constant(1.0);
    SpectralDecomposition dec = eigendecompose(assemble(g, V));
    AuxFunction aux = compute_aux(V, g);
};

const SpaceSetup& spaces() {
    static const SpaceSetup s;
    return s;
}

double gconst(double b) { return std::pow(2.0, -b) * std::sqrt(std::tgamma(2.0 * b)); }

Outcome g_identity() {
    Outcome o;
    const auto& s = spaces();
    std::mt19937_64 rng(7);
    for (double b : {0.5, 1.0, 1.5}) {
        auto tg = make_time_grid(s.dec, 0.5, b);
        double eig = 0.0;
        for (std::size_t k : {std::size_t{0}, std::size_t{1}, s.dec.size() / 4, s.dec.size() - 1}) {
            auto phi = s.dec.mode(k);
            auto gg = g_function(s.dec, 0.5, b, phi, tg);
            for (std::size_t i = 0; i < phi.size(); ++i) eig = std::max(eig, std::abs(gg[i] - gconst(b) * std::abs(phi[i])) / max_abs(phi));
        }
        double iso = 0.0;
        for (int r = 0; r < 5; ++r) {
            auto f = random_mean_zero(s.g, rng);
            iso = std::max(iso, std::abs(l2_norm(g_function(s.dec, 0.5, b, f, tg)) / l2_norm(f) - gconst(b)));
        }
        o.check(eig <= kEigenIdentity && iso <= kIsometry, fmt("beta=%g eigen identity %.2e isometry %.2e", b, eig, iso));
    }
    o.summary = "g(phi_k) = 2^{-beta} Gamma(2beta)^{1/2} |phi_k| and L2 isometry";
    return o;
}

Outcome reproducing() {
    Outcome o;
    const auto& s = spaces();
    std::mt19937_64 rng(11);
    for (double b : {0.5, 1.0, 1.5}) {
        auto tg = make_time_grid(s.dec, 0.5, b);
        double worst = 0.0;
        for (int r = 0; r < 5; ++r) worst = std::max(worst, reproducing_check(s.dec, 0.5, b, random_mean_zero(s.g, rng), tg));
        o.check(worst <= kReproducing, fmt("beta=%g residual %.2e, c=%.6f", b, worst, reproducing_constant(b)));
    }
    o.summary = "c_{alpha,beta} integral of D_t^2 f dt/t reproduces f";
    return o;
}

Outcome duality() {
    Outcome o;
    const auto& s = spaces();
    std::mt19937_64 rng(13);
    auto tg = make_time_grid(s.dec, 0.5, 1.0);
    int good = 0, draws = 0;
    double worst = 0.0;
    for (; good < 10 && draws < 100; ++draws) {
        auto f = random_mean_zero(s.g, rng);
        auto at = random_atom(s.g, s.aux, 0.25, rng);
        auto pr = duality_pairing_check(f, at.a, s.dec, 0.5, 1.0, tg);
        if (pr.orthogonal) continue;
        ++good;
        worst = std::max(worst, std::abs(pr.ratio - 1.0));
    }
    o.check(good == 10 && worst <= kPairing, fmt("%d non-orthogonal pairs in %d draws, max |ratio-1| = %.2e", good, draws, worst));
    o.summary = "space-time pairing of D_t f and D_t a against C <f, a>";
    return o;
}

Outcome area() {
    Outcome o;
    const auto& s = spaces();
    const double b = 1.0;
    auto tg = make_time_grid(s.dec, 0.5, b);
    double worst = 0.0;
    for (const auto& m : equivalence_suite(s.dec, s.aux, 0.25, 42))
        worst = std::max(worst, l2_norm(area_function(s.dec, 0.5, b, m.f, tg)) / l2_norm(m.f));
    o.check(worst <= kAreaFactor * gconst(b), fmt("max ||S f|| / ||f|| = %.4f, bound %.4f", worst, kAreaFactor * gconst(b)));
    std::mt19937_64 rng(17);
    double smax = 0.0;
    for (int k = 0; k < 20; ++k) {
        auto at = random_atom(s.g, s.aux, 0.25, rng);
        auto S = area_function(s.dec, 0.5, b, at.a, tg);
        double sum = 0.0;
        for (double v : S.values()) sum += std::pow(std::abs(v), at.p);
        smax = std::max(smax, std::pow(sum * s.g.cell_volume(), 1.0 / at.p));
    }
    o.check(std::isfinite(smax), fmt("max over 20 atoms of ||S a||_{L^p}, p=0.8: %.4f", smax));
    o.summary = "area function L2 bound and atom estimates";
    return o;
}

Outcome equivalence() {
    Outcome o;
    const auto& s = spaces();
    EquivalenceParams p{0.5, 1.0, 0.25};
    auto suite = equivalence_suite(s.dec, s.aux, p.gamma, 42);
    auto table = equivalence_experiment(suite, s.dec, s.aux, p);
    for (const auto& r : table.ranges) o.info(fmt("N%d/N%d in [%.4g, %.4g]", r.a, r.b, r.lo, r.hi));
    o.check(table.excluded.empty() && table.rows.size() == 10,
            fmt("%zu functions evaluated, %zu excluded", table.rows.size(), table.excluded.size()));
    o.check(table.c_star <= kCStar, fmt("c* = %.4f", table.c_star));
    auto tg = make_time_grid(s.dec, p.alpha, p.beta);
    double hom = 0.0;
    for (const auto& m : suite) {
        auto a = norm_set(m.name, m.f, s.dec, s.aux, p, tg);
        auto b = norm_set(m.name, -2.5 * m.f, s.dec, s.aux, p, tg);
        for (int k = 1; k <= 5; ++k) hom = std::max(hom, std::abs(b.get(k) / (2.5 * a.get(k)) - 1.0));
    }
    o.check(hom <= kHomogeneity, fmt("homogeneity defect under f -> -2.5 f: %.2e", hom));
    o.summary = "N1..N5 equivalence at (alpha, beta, gamma) = (0.5, 1, 0.25)";
    return o;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism() {
    Outcome o;
    namespace fs = std::filesystem;
    const fs::path root = fs::temp_directory_path() / "subheat_acceptance_determinism";
    fs::remove_all(root);
    int files = 0;
    for (Command c : {Command::kernels, Command::verify, Command::spaces, Command::equiv}) {
        std::vector<fs::path> outs;
        for (int rep = 0; rep < 2; ++rep) {
            RunConfig cfg;
            cfg.M = 128;
            cfg.command = c;
            cfg.seed = 1234;
            cfg.out = (root / (std::string(command_name(c)) + std::to_string(rep))).string();
            run(cfg);
            outs.emplace_back(cfg.out);
        }
        for (const auto& e : fs::directory_iterator(outs[0])) {
            ++files;
            auto other = outs[1] / e.path().filename();
            o.check(fs::exists(other) && slurp(e.path()) == slurp(other),
                    fmt("%s/%s", command_name(c), e.path().filename().string().c_str()));
        }
    }
    fs::remove_all(root);
    o.summary = fmt("two runs with identical config and seed, %d CSV files compared byte for byte", files);
    return o;
}

const std::vector<std::pair<int, std::function<Outcome()>>>& registry() {
    static const std::vector<std::pair<int, std::function<Outcome()>>> r{
        {1, kernel_axioms}, {2, gaussian_domination}, {3, subordinator}, {4, two_route},   {5, poisson},
        {6, frac_derivative}, {7, certificates},   {8, decay},        {9, g_identity},  {10, reproducing},
        {11, duality},      {12, area},          {13, equivalence},  {14, determinism}};
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));
    bool all = true;
    for (const auto& [id, fn] : registry()) {
        if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), id) == wanted.end()) continue;
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o.pass = false;
            o.summary = std::string("exception: ") + e.what();
        }
        std::printf("criterion %2d: %s  %s\n", id, o.pass ? "PASS" : "FAIL", o.summary.c_str());
        for (const auto& d : o.details) std::printf("    %s\n", d.c_str());
        std::fflush(stdout);
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
