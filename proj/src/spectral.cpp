#include "subheat/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <string>

#include "subheat/error.hpp"

namespace subheat {

DiscreteOperator assemble(const Grid& grid, const PotentialSpec& spec) {
    DiscreteOperator op;
    op.grid = grid;
    const auto N = static_cast<Eigen::Index>(grid.size());
    const double ih2 = 1.0 / (grid.spacing() * grid.spacing());
    op.matrix = Eigen::MatrixXd::Zero(N, N);
    auto v = sample_potential(grid, spec);
    op.potential.assign(v.values().begin(), v.values().end());
    for (Eigen::Index i = 0; i < N; ++i) {
        op.matrix(i, i) = 2.0 * grid.dim() * ih2 + op.potential[i];
        for (int d = 0; d < grid.dim(); ++d) {
            for (int off : {-1, 1}) {
                long j = grid.neighbor(static_cast<std::size_t>(i), d, off);
                if (j >= 0) op.matrix(i, j) -= ih2;  // Dirichlet: missing neighbour is a zero ghost
            }
        }
    }
    return op;
}

double SpectralDecomposition::lambda_min_positive() const {
    for (double l : lambda)
        if (l > 0.0) return l;
    fail_numerical("lambda_min_positive", "spectrum has no positive eigenvalue");
}

GridFunction SpectralDecomposition::mode(std::size_t k) const {
    GridFunction f(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) f[i] = phi(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
    return f;
}

SpectralDecomposition eigendecompose(const DiscreteOperator& op) {
    if ((op.matrix - op.matrix.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + op.matrix.cwiseAbs().maxCoeff()))
        fail_config("eigendecompose", "matrix is not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.matrix);
    if (es.info() != Eigen::Success) fail_numerical("eigendecompose", "eigensolver did not converge");

    SpectralDecomposition dec;
    dec.grid = op.grid;
    dec.lambda.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    for (double& l : dec.lambda) {
        if (l < -1e-10) fail_numerical("eigendecompose", "negative eigenvalue " + std::to_string(l));
        if (std::abs(l) < 1e-10) {
            l = 0.0;
            dec.has_zero_mode = true;
        }
    }
    const double scale = 1.0 / std::sqrt(op.grid.cell_volume());
    dec.phi = es.eigenvectors() * scale;
    // cheap guard against a broken solver: the basis must stay orthonormal
    const auto& v = es.eigenvectors();
    double defect = (v.transpose() * v - Eigen::MatrixXd::Identity(v.cols(), v.cols())).cwiseAbs().maxCoeff();
    if (!(defect < 1e-9)) fail_numerical("eigendecompose", "eigenvectors lost orthonormality: " + std::to_string(defect));
    return dec;
}

DecompositionCheck check_decomposition(const DiscreteOperator& op, const SpectralDecomposition& dec) {
    DecompositionCheck c;
    const double cell = dec.grid.cell_volume();
    Eigen::MatrixXd gram = dec.phi.transpose() * dec.phi * cell;
    c.orthonormality = (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
    Eigen::MatrixXd lp = op.matrix * dec.phi;
    for (Eigen::Index k = 0; k < lp.cols(); ++k) {
        double r = (lp.col(k) - dec.lambda[k] * dec.phi.col(k)).norm() * std::sqrt(cell);
        c.residual = std::max(c.residual, r / (1.0 + dec.lambda[k]));
    }
    return c;
}

const char* route_name(Route r) {
    switch (r) {
        case Route::spectral: return "spectral";
        case Route::subordinated: return "subordinated";
        case Route::closed_form: return "closed_form";
        case Route::fourier_oracle: return "fourier_oracle";
    }
    return "unknown";
}

namespace multipliers {

Multiplier identity() {
    return [](double) { return 1.0; };
}
Multiplier heat(double t) {
    return [t](double l) { return std::exp(-t * l); };
}
Multiplier frac_heat(double alpha, double t) {
    return [alpha, t](double l) { return std::exp(-t * std::pow(l, alpha)); };
}
Multiplier poisson(double t) {
    return [t](double l) { return std::exp(-t * std::sqrt(l)); };
}
Multiplier frac_derivative(double alpha, double beta, double t) {
    return [alpha, beta, t](double l) {
        double a = t * std::pow(l, alpha);
        return std::pow(a, beta) * std::exp(-a);
    };
}
Multiplier q_kernel(int m, double t) {
    return [m, t](double l) { return std::pow(-t * l, m) * std::exp(-t * l); };
}
Multiplier d_tilde(double alpha, int m, double t) {
    return [alpha, m, t](double l) {
        double a = t * std::pow(l, alpha);
        return std::pow(-a, m) * std::exp(-a);
    };
}

}  // namespace multipliers

std::vector<double> multiplier_weights(const SpectralDecomposition& dec, const Multiplier& m) {
    std::vector<double> w(dec.size());
    for (std::size_t k = 0; k < w.size(); ++k) {
        w[k] = m(dec.lambda[k]);
        if (!std::isfinite(w[k]))
            fail_numerical("multiplier_kernel", "multiplier not finite at lambda = " + std::to_string(dec.lambda[k]));
    }
    return w;
}

KernelSlice kernel_from_weights(const SpectralDecomposition& dec, const std::vector<double>& w, double t,
                                Route route) {
    KernelSlice K;
    K.grid = dec.grid;
    K.t = t;
    K.route = route;
    K.table = parallel::assemble_table(dec.phi, w);
    return K;
}

KernelSlice multiplier_kernel(const SpectralDecomposition& dec, const Multiplier& m, double t, double alpha,
                              double beta, int order) {
    auto K = kernel_from_weights(dec, multiplier_weights(dec, m), t, Route::spectral);
    K.alpha = alpha;
    K.beta = beta;
    K.m = order;
    return K;
}

GridFunction apply_kernel(const KernelSlice& K, const GridFunction& f) {
    if (f.size() != static_cast<std::size_t>(K.table.rows())) fail_config("apply_kernel", "shape mismatch");
    std::vector<double> in(f.values().begin(), f.values().end());
    return GridFunction(K.grid, parallel::apply_table(K.table, in, K.grid.cell_volume()));
}

GridFunction apply_multiplier(const SpectralDecomposition& dec, const std::vector<double>& w, const GridFunction& f) {
    std::vector<double> in(f.values().begin(), f.values().end());
    return GridFunction(dec.grid, parallel::apply_spectral(dec.phi, w, in, dec.grid.cell_volume()));
}

FreeLatticeKernel::FreeLatticeKernel(const Grid& grid, double t) : grid_(grid) {
    if (!(t > 0.0)) fail_config("FreeLatticeKernel", "t must be positive");
    const double h = grid.spacing();
    const double z = 2.0 * t / (h * h);
    const int M = grid.points_per_axis();
    const int kmax = grid.boundary() == Boundary::periodic ? 3 * M : M;
    // trapezoid in θ is exact up to aliasing at k ± Q
    const int Q = 2 * (kmax + static_cast<int>(10.0 * std::sqrt(z)) + 64);
    vals_.assign(kmax + 1, 0.0);
    std::vector<double> e(Q), th(Q);
    for (int q = 0; q < Q; ++q) {
        th[q] = 2.0 * std::numbers::pi * q / Q;
        e[q] = std::exp(-z * (1.0 - std::cos(th[q])));
    }
    for (int k = 0; k <= kmax; ++k) {
        double s = 0.0;
        for (int q = 0; q < Q; ++q) s += e[q] * std::cos(k * th[q]);
        vals_[k] = s / Q / h;
    }
}

double FreeLatticeKernel::axis_factor(int k) const {
    k = std::abs(k);
    return k < static_cast<int>(vals_.size()) ? vals_[k] : 0.0;
}

double FreeLatticeKernel::operator()(std::size_t i, std::size_t j) const {
    auto a = grid_.multi_index(i), b = grid_.multi_index(j);
    const int M = grid_.points_per_axis();
    double v = 1.0;
    for (int d = 0; d < grid_.dim(); ++d) {
        int k = a[d] - b[d];
        double s = axis_factor(k);
        if (grid_.boundary() == Boundary::periodic)
            for (int w = 1; w <= 2; ++w) s += axis_factor(k - w * M) + axis_factor(k + w * M);
        v *= s;
    }
    return v;
}

}  // namespace subheat
