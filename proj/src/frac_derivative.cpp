#include "subheat/frac_derivative.hpp"

#include <cmath>

#include "subheat/error.hpp"
#include "subheat/quadrature.hpp"

namespace subheat {

FracDerivSpec frac_deriv_spec(double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta)) fail_config("frac_time_derivative", "beta must be positive");
    FracDerivSpec s;
    s.beta = beta;
    s.m = static_cast<int>(std::floor(beta)) + 1;
    return s;
}

FracQuadrature frac_quadrature(const FracDerivSpec& spec, double t, double rate_min, double rate_max) {
    if (!(t > 0.0)) fail_config("frac_time_derivative", "t must be positive");
    if (!(spec.beta > 0.0)) fail_config("frac_time_derivative", "beta must be positive");
    if (spec.jacobi_nodes < 64) fail_config("frac_time_derivative", "need at least 64 nodes");
    const double c = spec.m - spec.beta - 1.0;  // in (-1, 0]
    if (!(c > -1.0 && c <= 0.0)) fail_config("frac_time_derivative", "m - beta must lie in (0, 1]");
    if (!(rate_max > 0.0) || !(rate_min > 0.0)) fail_config("frac_time_derivative", "decay rates must be positive");

    FracQuadrature q;
    q.u_max = spec.u_max > 0.0 ? spec.u_max : 50.0 * t + 50.0 / rate_min;
    if (q.u_max < 50.0 * t) fail_config("frac_time_derivative", "quadrature upper range below 50 t");
    const double sign = (spec.m % 2 ? -1.0 : 1.0) / std::tgamma(spec.m - spec.beta);
    const double u0 = std::min(0.05 / rate_max, q.u_max);
    auto first = left_singular_rule(spec.jacobi_nodes, c, u0);
    for (std::size_t i = 0; i < first.size(); ++i) {
        q.u.push_back(first.nodes[i]);
        q.w.push_back(sign * first.weights[i]);
    }
    for (double a = u0; a < q.u_max; a *= 2.0) {
        double b = std::min(2.0 * a, q.u_max);
        auto g = gauss_legendre(spec.panel_nodes, a, b);
        for (std::size_t i = 0; i < g.size(); ++i) {
            q.u.push_back(g.nodes[i]);
            q.w.push_back(sign * g.weights[i] * std::pow(g.nodes[i], c));
        }
    }
    return q;
}

double frac_time_derivative(const std::function<double(double)>& dm, const FracDerivSpec& spec, double t,
                            double rate_min, double rate_max) {
    auto q = frac_quadrature(spec, t, rate_min, rate_max);
    double s = 0.0;
    for (std::size_t i = 0; i < q.u.size(); ++i) s += q.w[i] * dm(t + q.u[i]);
    return s;
}

KernelSlice frac_time_derivative(const std::function<KernelSlice(double)>& dm, const FracDerivSpec& spec, double t,
                                 double rate_min, double rate_max) {
    auto q = frac_quadrature(spec, t, rate_min, rate_max);
    KernelSlice out;
    for (std::size_t i = 0; i < q.u.size(); ++i) {
        auto K = dm(t + q.u[i]);
        if (i == 0) {
            out = K;
            out.table *= q.w[i];
        } else {
            out.table += q.w[i] * K.table;
        }
    }
    out.t = t;
    out.beta = spec.beta;
    out.m = spec.m;
    return out;
}

std::vector<double> frac_derivative_weights(const SpectralDecomposition& dec, double alpha, const FracDerivSpec& spec,
                                            double t) {
    double rmin = std::pow(dec.has_zero_mode ? dec.lambda_min_positive() : dec.lambda.front(), alpha);
    double rmax = std::pow(dec.lambda_max(), alpha);
    auto q = frac_quadrature(spec, t, rmin, rmax);
    std::vector<double> w(dec.size());
    const long K = static_cast<long>(dec.size());
#pragma omp parallel for schedule(static)
    for (long k = 0; k < K; ++k) {
        const double r = std::pow(dec.lambda[k], alpha);
        const double dm = std::pow(-r, spec.m);
        double acc = 0.0;
        for (std::size_t i = 0; i < q.u.size(); ++i) acc += q.w[i] * std::exp(-(t + q.u[i]) * r);
        w[k] = dm * acc;
    }
    return w;
}

KernelSlice d_operator(const SpectralDecomposition& dec, double alpha, double beta, double t) {
    if (!(beta > 0.0)) fail_config("d_operator", "beta must be positive");
    if (!(t > 0.0)) fail_config("d_operator", "t must be positive");
    return multiplier_kernel(dec, multipliers::frac_derivative(alpha, beta, t), t, alpha, beta);
}

KernelSlice d_operator_quadrature(const SpectralDecomposition& dec, double alpha, double beta, double t) {
    auto spec = frac_deriv_spec(beta);
    auto w = frac_derivative_weights(dec, alpha, spec, t);
    const double tb = std::pow(t, beta);
    for (double& v : w) v *= tb;
    auto K = kernel_from_weights(dec, w, t, Route::spectral);
    K.alpha = alpha;
    K.beta = beta;
    K.m = spec.m;
    return K;
}

double GradientField::norm(std::size_t i) const {
    const auto& g = values[i];
    return std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]);
}

namespace {

template <class Value>
std::array<double, 3> central_difference(const Grid& grid, std::size_t i, Value&& value) {
    std::array<double, 3> g{0.0, 0.0, 0.0};
    const double inv = 0.5 / grid.spacing();
    for (int d = 0; d < grid.dim(); ++d) {
        long p = grid.neighbor(i, d, 1), m = grid.neighbor(i, d, -1);
        double fp = p >= 0 ? value(static_cast<std::size_t>(p)) : 0.0;
        double fm = m >= 0 ? value(static_cast<std::size_t>(m)) : 0.0;
        g[d] = (fp - fm) * inv;
    }
    return g;
}

}  // namespace

GradientField spatial_gradient(const KernelSlice& K, std::size_t fixed_y) {
    GradientField G;
    G.grid = K.grid;
    G.values.resize(K.grid.size());
    for (std::size_t i = 0; i < K.grid.size(); ++i)
        G.values[i] = central_difference(K.grid, i, [&](std::size_t k) { return K(k, fixed_y); });
    return G;
}

GradientField gradient(const GridFunction& f) {
    GradientField G;
    G.grid = f.grid();
    G.values.resize(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        G.values[i] = central_difference(f.grid(), i, [&](std::size_t k) { return f[k]; });
    return G;
}

std::array<double, 3> gradient_at(const KernelSlice& K, std::size_t i, std::size_t j) {
    if (K.grid.boundary() == Boundary::dirichlet) {
        auto idx = K.grid.multi_index(i);
        for (int d = 0; d < K.grid.dim(); ++d)
            if (idx[d] == 0 || idx[d] == K.grid.points_per_axis() - 1)
                fail_config("spatial_gradient", "point lies in the boundary layer");
    }
    return central_difference(K.grid, i, [&](std::size_t k) { return K(k, j); });
}

Eigen::MatrixXd gradient_norm_table(const KernelSlice& K) {
    const auto N = static_cast<Eigen::Index>(K.grid.size());
    Eigen::MatrixXd out(N, N);
#pragma omp parallel for schedule(static)
    for (Eigen::Index j = 0; j < N; ++j)
        for (Eigen::Index i = 0; i < N; ++i) {
            auto g = central_difference(K.grid, static_cast<std::size_t>(i),
                                        [&](std::size_t k) { return K.table(static_cast<Eigen::Index>(k), j); });
            out(i, j) = std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]);
        }
    return out;
}

NablaAlpha nabla_alpha(const SpectralDecomposition& dec, double alpha, const GridFunction& f, double t) {
    if (!(t > 0.0)) fail_config("nabla_alpha", "t must be positive");
    if (!(alpha > 0.0 && alpha < 1.0)) fail_config("nabla_alpha", "alpha must lie in (0,1)");
    auto u = apply_multiplier(dec, multiplier_weights(dec, multipliers::frac_heat(alpha, t)), f);
    // (λ^α)^{1/2α} = λ^{1/2}
    auto wt = multiplier_weights(dec, [alpha, t](double l) { return std::sqrt(l) * std::exp(-t * std::pow(l, alpha)); });
    return {gradient(u), apply_multiplier(dec, wt, f)};
}

}  // namespace subheat
