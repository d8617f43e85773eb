#include "subheat/subordinator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "subheat/error.hpp"
#include "subheat/quadrature.hpp"

namespace subheat {

namespace {

constexpr double kPi = std::numbers::pi;

// Zolotarev's A(φ) = [sin(αφ)/sin φ]^{1/(1-α)} sin((1-α)φ)/sin(αφ), in logs.
double log_zolotarev_a(double alpha, double phi) {
    return std::log(std::sin(alpha * phi) / std::sin(phi)) / (1.0 - alpha) + std::log(std::sin((1.0 - alpha) * phi)) -
           std::log(std::sin(alpha * phi));
}

// composite Gauss-Legendre in log s: panels of at most one log unit
QuadratureRule log_panels(double s_lo, double s_hi, int min_nodes, int per_panel = 16) {
    const double a = std::log(s_lo), b = std::log(s_hi);
    int panels = std::max(static_cast<int>(std::ceil(b - a)), (min_nodes + per_panel - 1) / per_panel);
    panels = std::max(panels, 1);
    QuadratureRule out;
    for (int p = 0; p < panels; ++p) {
        auto g = gauss_legendre(per_panel, a + (b - a) * p / panels, a + (b - a) * (p + 1) / panels);
        for (std::size_t i = 0; i < g.size(); ++i) {
            double s = std::exp(g.nodes[i]);
            out.nodes.push_back(s);
            out.weights.push_back(g.weights[i] * s);  // ds = s d(log s)
        }
    }
    return out;
}

}  // namespace

SubordinatorDensity::SubordinatorDensity(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) fail_config("SubordinatorDensity", "alpha must lie in (0,1)");
}

double SubordinatorDensity::closed_form_half(double s) const {
    return 0.5 / std::sqrt(kPi) * std::pow(s, -1.5) * std::exp(-0.25 / s);
}

double SubordinatorDensity::series(double s) const {
    if (!(s > 0.0)) fail_config("density", "s must be positive");
    const double a = alpha_;
    const double ls = std::log(s);
    double sum = 0.0;
    for (int k = 1; k < 2000; ++k) {
        double sn = std::sin(kPi * a * k);
        double mag = std::exp(std::lgamma(a * k + 1.0) - std::lgamma(k + 1.0) - (a * k + 1.0) * ls) / kPi;
        double term = (k % 2 ? 1.0 : -1.0) * sn * mag;
        sum += term;
        if (k > 8 && mag < 1e-18 * std::abs(sum)) break;
    }
    return std::max(sum, 0.0);
}

double SubordinatorDensity::inversion(double s) const {
    if (!(s > 0.0)) fail_config("density", "s must be positive");
    const double a = alpha_;
    const double K = std::exp(-a / (1.0 - a) * std::log(s));
    const double a0 = std::exp(a / (1.0 - a) * std::log(a)) * (1.0 - a);
    // φ_max where A reaches a0 + 40/K; A increases on (0, π)
    const double target = std::log(a0 + 40.0 / K);
    double lo = 0.0, hi = kPi;
    for (int i = 0; i < 80; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid <= 0.0 || log_zolotarev_a(a, mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    const double phi_max = hi;
    const double lpre = std::log(a / (1.0 - a)) - std::log(s) / (1.0 - a) - std::log(kPi);
    double sum = 0.0;
    // two panels: the integrand steepens towards φ_max when K is small
    const double split = 0.75 * phi_max;
    for (auto [p0, p1] : {std::pair{0.0, split}, std::pair{split, phi_max}}) {
        auto g = gauss_legendre(64, p0, p1);
        for (std::size_t i = 0; i < g.size(); ++i) {
            double la = log_zolotarev_a(a, g.nodes[i]);
            sum += g.weights[i] * std::exp(lpre + la - K * std::exp(la));
        }
    }
    return sum;
}

double SubordinatorDensity::operator()(double s) const {
    if (!(s > 0.0)) fail_config("density", "s must be positive");
    if (alpha_ == 0.5) return closed_form_half(s);
    return s > crossover() ? series(s) : inversion(s);
}

double SubordinatorDensity::scaled(double t, double s) const {
    const double tau = std::pow(t, 1.0 / alpha_);
    return (*this)(s / tau) / tau;
}

double SubordinatorDensity::tail_mass(double S) const {
    if (!(S >= 1.0)) fail_config("tail_mass", "series tail needs S >= 1");
    if (alpha_ == 0.5) return std::erf(0.5 / std::sqrt(S));
    const double a = alpha_;
    const double ls = std::log(S);
    double sum = 0.0;
    for (int k = 1; k < 2000; ++k) {
        double mag = std::exp(std::lgamma(a * k + 1.0) - std::lgamma(k + 1.0) - a * k * ls) / (kPi * a * k);
        sum += (k % 2 ? 1.0 : -1.0) * std::sin(kPi * a * k) * mag;
        if (k > 8 && mag < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

double SubordinatorDensity::negligible_below() const {
    if (alpha_ == 0.5) return 1.0 / 240.0;  // e^{-1/4s} = e^{-60}
    const double a0 = std::exp(alpha_ / (1.0 - alpha_) * std::log(alpha_)) * (1.0 - alpha_);
    return std::exp(-(1.0 - alpha_) / alpha_ * std::log(60.0 / a0));
}

double integrate_against_density(const SubordinatorDensity& eta, const std::function<double(double)>& g, double g_inf,
                                 double s_hi) {
    auto rule = log_panels(eta.negligible_below(), s_hi, 64);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) sum += rule.weights[i] * eta(rule.nodes[i]) * g(rule.nodes[i]);
    return sum + g_inf * eta.tail_mass(s_hi);
}

double laplace_transform(const SubordinatorDensity& eta, double lambda) {
    const double s_hi = lambda > 0.0 ? std::max(1e4, 60.0 / lambda) : 1e4;
    return integrate_against_density(eta, [lambda](double s) { return std::exp(-lambda * s); },
                                     lambda > 0.0 ? 0.0 : 1.0, s_hi);
}

double SubordinatorDensity::normalization_defect() const {
    return std::abs(1.0 - integrate_against_density(*this, [](double) { return 1.0; }, 1.0));
}

double density(double alpha, double s) { return SubordinatorDensity(alpha)(s); }

DensityReport density_selftest(double alpha) {
    SubordinatorDensity eta(alpha);
    DensityReport r;
    r.alpha = alpha;
    r.normalization_defect = eta.normalization_defect();

    // start where s^{-α} <= 1e-2 so the second series term is negligible
    const double s_lo = std::max(1e2, std::pow(10.0, 2.0 / alpha));
    auto pts = log_spaced(s_lo, 1e2 * s_lo, 41);
    double mx = 0.0, my = 0.0;
    std::vector<double> lx, ly;
    for (double s : pts) {
        lx.push_back(std::log(s));
        ly.push_back(std::log(eta(s)));
        mx += lx.back();
        my += ly.back();
    }
    mx /= lx.size();
    my /= ly.size();
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    r.tail_slope = sxy / sxx;
    r.tail_r2 = sxy * sxy / (sxx * syy);

    r.moment_half = integrate_against_density(eta, [](double s) { return 1.0 / std::sqrt(s); }, 0.0, 1e12);
    r.moment_one = integrate_against_density(eta, [](double s) { return 1.0 / s; }, 0.0, 1e12);

    if (alpha != 0.5)
        for (double s : log_spaced(0.5, 2.0, 25)) r.overlap_gap = std::max(r.overlap_gap, std::abs(eta.series(s) - eta.inversion(s)));
    return r;
}

SubordinationNodes subordination_nodes(const SpectralDecomposition& dec, double alpha, double t,
                                       const SubordinationQuad& quad) {
    if (!(t > 0.0)) fail_config("subordinate_kernel", "t must be positive");
    if (quad.nodes < 64) fail_config("subordinate_kernel", "need at least 64 quadrature nodes");
    SubordinatorDensity eta(alpha);
    const double tau = std::pow(t, 1.0 / alpha);
    SubordinationNodes out;
    out.s_lo = quad.s_lo > 0.0 ? quad.s_lo : 1e-6 * tau;
    double lmin = 0.0;
    for (double l : dec.lambda)
        if (l > 0.0) {
            lmin = l;
            break;
        }
    out.s_hi = quad.s_hi > 0.0 ? quad.s_hi : std::max(1e3 * tau, lmin > 0.0 ? 40.0 / lmin : 0.0);
    if (!(out.s_lo <= 1e-3 * tau && out.s_hi >= 1e3 * tau))
        fail_config("subordinate_kernel", "quadrature range does not bracket the scaling time t^{1/alpha}");
    out.s_lo = std::max(out.s_lo, eta.negligible_below() * tau);
    auto rule = log_panels(out.s_lo, out.s_hi, quad.nodes);
    out.s = rule.nodes;
    out.weight.resize(rule.size());
    for (std::size_t q = 0; q < rule.size(); ++q) out.weight[q] = rule.weights[q] * eta.scaled(t, rule.nodes[q]);
    out.tail_mass = eta.tail_mass(out.s_hi / tau);
    return out;
}

std::vector<double> subordination_weights(const SpectralDecomposition& dec, double alpha, double t,
                                          const SubordinationQuad& quad) {
    auto nodes = subordination_nodes(dec, alpha, t, quad);
    std::vector<double> w(dec.size());
    const long K = static_cast<long>(dec.size());
#pragma omp parallel for schedule(static)
    for (long k = 0; k < K; ++k) {
        const double l = dec.lambda[k];
        double acc = 0.0;
        for (std::size_t q = 0; q < nodes.s.size(); ++q) acc += nodes.weight[q] * std::exp(-nodes.s[q] * l);
        if (l == 0.0) acc += nodes.tail_mass;
        w[k] = acc;
    }
    return w;
}

KernelSlice subordinate_kernel(const SpectralDecomposition& dec, double alpha, double t,
                               const SubordinationQuad& quad) {
    auto K = kernel_from_weights(dec, subordination_weights(dec, alpha, t, quad), t, Route::subordinated);
    K.alpha = alpha;
    return K;
}

KernelSlice subordinate_kernel_literal(const SpectralDecomposition& dec, double alpha, double t,
                                       const SubordinationQuad& quad) {
    auto nodes = subordination_nodes(dec, alpha, t, quad);
    KernelSlice out;
    out.grid = dec.grid;
    out.t = t;
    out.alpha = alpha;
    out.route = Route::subordinated;
    const auto N = static_cast<Eigen::Index>(dec.size());
    out.table = Eigen::MatrixXd::Zero(N, N);
    for (std::size_t q = 0; q < nodes.s.size(); ++q) {
        auto heat = serial::assemble_table(dec.phi, multiplier_weights(dec, multipliers::heat(nodes.s[q])));
        out.table += nodes.weight[q] * heat;
    }
    if (dec.has_zero_mode) {
        std::vector<double> w(dec.size(), 0.0);
        for (std::size_t k = 0; k < w.size(); ++k)
            if (dec.lambda[k] == 0.0) w[k] = nodes.tail_mass;
        out.table += serial::assemble_table(dec.phi, w);
    }
    return out;
}

}  // namespace subheat
