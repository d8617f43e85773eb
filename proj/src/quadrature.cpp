#include "subheat/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <mutex>
#include <utility>

#include "subheat/error.hpp"

namespace subheat {

namespace {

// Golub-Welsch on the Jacobi matrix of the monic recurrence.
QuadratureRule from_recurrence(const Eigen::VectorXd& diag, const Eigen::VectorXd& offdiag, double mu0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, offdiag, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success) fail_numerical("gauss rule", "tridiagonal eigensolver failed");
    const int n = static_cast<int>(diag.size());
    QuadratureRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        r.nodes[i] = es.eigenvalues()(i);
        double v0 = es.eigenvectors()(0, i);
        r.weights[i] = mu0 * v0 * v0;
    }
    return r;
}

}  // namespace

QuadratureRule gauss_jacobi(int n, double a, double b) {
    if (n < 1) fail_config("gauss_jacobi", "need at least one node");
    if (!(a > -1.0) || !(b > -1.0)) fail_config("gauss_jacobi", "exponents must exceed -1");

    static std::mutex mu;
    static std::map<std::tuple<int, double, double>, QuadratureRule> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({n, a, b});
        if (it != cache.end()) return it->second;
    }

    Eigen::VectorXd diag(n), off(std::max(n - 1, 0));
    const double ab = a + b;
    for (int k = 0; k < n; ++k) {
        double s = 2.0 * k + ab;
        if (k == 0)
            diag(k) = (b - a) / (ab + 2.0);
        else
            diag(k) = (b * b - a * a) / (s * (s + 2.0));
    }
    for (int k = 1; k < n; ++k) {
        double s = 2.0 * k + ab;
        double num = 4.0 * k * (k + a) * (k + b) * (k + ab);
        double den = s * s * (s + 1.0) * (s - 1.0);
        // k = 1 with a + b = -1 is 0/0 in the general form
        if (k == 1) {
            num = 4.0 * (1.0 + a) * (1.0 + b);
            den = (ab + 2.0) * (ab + 2.0) * (ab + 3.0);
        }
        off(k - 1) = std::sqrt(num / den);
    }
    double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                          std::lgamma(ab + 2.0));
    auto rule = from_recurrence(diag, off, mu0);

    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(std::make_tuple(n, a, b), rule);
    return rule;
}

QuadratureRule gauss_legendre(int n, double a, double b) {
    auto r = gauss_jacobi(n, 0.0, 0.0);
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (std::size_t i = 0; i < r.size(); ++i) {
        r.nodes[i] = mid + half * r.nodes[i];
        r.weights[i] *= half;
    }
    return r;
}

QuadratureRule left_singular_rule(int n, double c, double u0) {
    // u = u0 (1+x)/2, u^c du = (u0/2)^{c+1} (1+x)^c dx
    auto r = gauss_jacobi(n, 0.0, c);
    const double scale = std::pow(0.5 * u0, c + 1.0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        r.nodes[i] = 0.5 * u0 * (1.0 + r.nodes[i]);
        r.weights[i] *= scale;
    }
    return r;
}

double simpson(const std::function<double(double)>& f, double a, double b, int intervals) {
    if (intervals < 2 || intervals % 2 != 0) fail_config("simpson", "interval count must be even");
    const double h = (b - a) / intervals;
    double s = f(a) + f(b);
    for (int i = 1; i < intervals; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

std::vector<double> log_spaced(double lo, double hi, int count) {
    if (!(lo > 0.0) || !(hi >= lo) || count < 1) fail_config("log_spaced", "need 0 < lo <= hi and count >= 1");
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = lo;
        return out;
    }
    const double a = std::log(lo), b = std::log(hi);
    for (int i = 0; i < count; ++i) out[i] = std::exp(a + (b - a) * i / (count - 1));
    return out;
}

}  // namespace subheat
