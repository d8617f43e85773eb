#pragma once

#include <array>
#include <functional>
#include <vector>

#include "subheat/spectral.hpp"

namespace subheat {

/// Order β > 0 of the time derivative, m = ⌊β⌋ + 1. Real-normalized so that
/// ∂_t^β e^{-at} = a^β e^{-at}.
struct FracDerivSpec {
    double beta = 0.5;
    int m = 1;
    int jacobi_nodes = 64;
    int panel_nodes = 16;
    double u_max = 0.0;  // 0 selects 50 t + 50 / rate_min
};

FracDerivSpec frac_deriv_spec(double beta);

/// Nodes u_q and weights for (-1)^m / Γ(m-β) ∫_0^U g(u) u^{m-β-1} du. The
/// first panel [0, u0] is Gauss-Jacobi; later panels double in length.
/// rate_min and rate_max bound the decay rates present in the integrand.
struct FracQuadrature {
    std::vector<double> u;
    std::vector<double> w;
    double u_max = 0.0;
};

FracQuadrature frac_quadrature(const FracDerivSpec& spec, double t, double rate_min, double rate_max);

/// ∂_t^β of a scalar path; dm(s) returns ∂_s^m of the path at s.
double frac_time_derivative(const std::function<double(double)>& dm, const FracDerivSpec& spec, double t,
                            double rate_min, double rate_max);

/// ∂_t^β of a kernel path; dm(s) returns the kernel of ∂_s^m K_s.
KernelSlice frac_time_derivative(const std::function<KernelSlice(double)>& dm, const FracDerivSpec& spec, double t,
                                 double rate_min, double rate_max);

/// Quadrature route on the spectral side: Σ_q w_q (-λ^α)^m e^{-(t+u_q)λ^α}
/// per eigenvalue.
std::vector<double> frac_derivative_weights(const SpectralDecomposition& dec, double alpha, const FracDerivSpec& spec,
                                            double t);

/// Kernel of t^β ∂_t^β e^{-tL^α} by the multiplier (tλ^α)^β e^{-tλ^α}.
KernelSlice d_operator(const SpectralDecomposition& dec, double alpha, double beta, double t);
/// Same kernel by the integral definition of ∂_t^β.
KernelSlice d_operator_quadrature(const SpectralDecomposition& dec, double alpha, double beta, double t);

/// Central-difference gradient in x of K(x, y) at a fixed y.
struct GradientField {
    Grid grid;
    std::vector<std::array<double, 3>> values;
    double norm(std::size_t i) const;
};

GradientField spatial_gradient(const KernelSlice& K, std::size_t fixed_y);
GradientField gradient(const GridFunction& f);
/// ∇_x K(x_i, y_j); throws when x_i lies in the Dirichlet boundary layer.
std::array<double, 3> gradient_at(const KernelSlice& K, std::size_t i, std::size_t j);
/// |∇_x K(x_i, y_j)| for every pair.
Eigen::MatrixXd gradient_norm_table(const KernelSlice& K);

struct NablaAlpha {
    GradientField space;
    GridFunction time;  // ∂_t^{1/2α} e^{-tL^α} f
};

NablaAlpha nabla_alpha(const SpectralDecomposition& dec, double alpha, const GridFunction& f, double t);

}  // namespace subheat
