#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "subheat/grid.hpp"
#include "subheat/kernel_ops.hpp"
#include "subheat/potential.hpp"

namespace subheat {

/// -Δ_h + diag(V) with the 3/5/7-point stencil and the grid's boundary rule.
struct DiscreteOperator {
    Grid grid;
    Eigen::MatrixXd matrix;
    std::vector<double> potential;
};

DiscreteOperator assemble(const Grid& grid, const PotentialSpec& spec);

/// Full spectrum of a DiscreteOperator. phi(i, k) is eigenfunction k at
/// point i, orthonormal under sum f g h^n.
struct SpectralDecomposition {
    Grid grid;
    std::vector<double> lambda;  // ascending
    RowMatrix phi;
    bool has_zero_mode = false;

    std::size_t size() const { return lambda.size(); }
    double lambda_max() const { return lambda.back(); }
    /// Smallest eigenvalue that is not a zero mode.
    double lambda_min_positive() const;
    GridFunction mode(std::size_t k) const;
};

SpectralDecomposition eigendecompose(const DiscreteOperator& op);

struct DecompositionCheck {
    double orthonormality = 0.0;  // max |<phi_j, phi_k> - delta_jk|
    double residual = 0.0;        // max ||L phi_k - lambda_k phi_k|| / (1 + lambda_k)
};

DecompositionCheck check_decomposition(const DiscreteOperator& op, const SpectralDecomposition& dec);

enum class Route { spectral, subordinated, closed_form, fourier_oracle };
const char* route_name(Route r);

struct KernelSlice {
    Grid grid;
    double t = 0.0;
    double alpha = 1.0;
    double beta = 0.0;
    int m = 0;
    Route route = Route::spectral;
    Eigen::MatrixXd table;

    double operator()(std::size_t i, std::size_t j) const {
        return table(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
};

using Multiplier = std::function<double(double)>;

namespace multipliers {
Multiplier identity();
Multiplier heat(double t);
Multiplier frac_heat(double alpha, double t);
Multiplier poisson(double t);
/// (t λ^α)^β e^{-t λ^α}
Multiplier frac_derivative(double alpha, double beta, double t);
/// t^m (-λ)^m e^{-tλ}
Multiplier q_kernel(int m, double t);
/// t^m (-λ^α)^m e^{-tλ^α}
Multiplier d_tilde(double alpha, int m, double t);
}  // namespace multipliers

std::vector<double> multiplier_weights(const SpectralDecomposition& dec, const Multiplier& m);

KernelSlice multiplier_kernel(const SpectralDecomposition& dec, const Multiplier& m, double t, double alpha = 1.0,
                              double beta = 0.0, int order = 0);
KernelSlice kernel_from_weights(const SpectralDecomposition& dec, const std::vector<double>& w, double t,
                                Route route);

/// Heat kernel of the free lattice Laplacian -Δ_h on hZ^n at time t, with
/// periodic images summed on periodic grids. Per-axis factors come from the
/// Fourier integral (1/2πh)∫ e^{-z(1-cos θ)} cos kθ dθ, z = 2t/h².
class FreeLatticeKernel {
public:
    FreeLatticeKernel(const Grid& grid, double t);
    double operator()(std::size_t i, std::size_t j) const;
    double axis_factor(int k) const;

private:
    Grid grid_;
    std::vector<double> vals_;
};

GridFunction apply_kernel(const KernelSlice& K, const GridFunction& f);
/// Same operator without forming the table.
GridFunction apply_multiplier(const SpectralDecomposition& dec, const std::vector<double>& w, const GridFunction& f);

}  // namespace subheat
