#pragma once

#include <functional>
#include <vector>

#include "subheat/spectral.hpp"

namespace subheat {

/// One-sided α-stable density η^α_1 with Laplace transform e^{-λ^α}.
///
/// For s > crossover the convergent series in s^{-α} is used, below it a
/// real integral representation (Zolotarev) evaluated by Gauss-Legendre in the
/// angle variable. α = 1/2 uses the closed form everywhere.
class SubordinatorDensity {
public:
    explicit SubordinatorDensity(double alpha);

    double alpha() const { return alpha_; }
    double crossover() const { return 1.0; }
    double operator()(double s) const;
    /// η^α_t(s) = t^{-1/α} η^α_1(s / t^{1/α})
    double scaled(double t, double s) const;

    double series(double s) const;
    double inversion(double s) const;
    double closed_form_half(double s) const;

    /// ∫_S^∞ η^α_1, S >= 1, by termwise integration of the series.
    double tail_mass(double S) const;
    /// Below this s the density is below e^{-60} times its scale.
    double negligible_below() const;

    /// |1 - ∫η| measured with the default log-s quadrature.
    double normalization_defect() const;

private:
    double alpha_;
};

double density(double alpha, double s);

/// ∫_0^∞ g(s) η^α_1(s) ds by composite log-s Gauss-Legendre plus the analytic
/// tail for g ≈ g(∞) beyond S. g must be bounded and tend to g_inf.
double integrate_against_density(const SubordinatorDensity& eta, const std::function<double(double)>& g, double g_inf,
                                 double s_hi = 1e4);

double laplace_transform(const SubordinatorDensity& eta, double lambda);

struct DensityReport {
    double alpha = 0.0;
    double normalization_defect = 0.0;
    double tail_slope = 0.0;
    double tail_r2 = 0.0;
    double moment_half = 0.0;  // ∫ s^{-1/2} η
    double moment_one = 0.0;   // ∫ s^{-1} η
    double overlap_gap = 0.0;  // max |series - inversion| on [0.5, 2]
};

DensityReport density_selftest(double alpha);

struct SubordinationQuad {
    int nodes = 128;
    double s_lo = 0.0;  // 0 selects 1e-6 t^{1/α}
    double s_hi = 0.0;  // 0 selects max(1e3 t^{1/α}, 40 / λ_min^+)
};

struct SubordinationNodes {
    std::vector<double> s;
    std::vector<double> weight;  // η_t(s_q) times the quadrature weight in s
    double tail_mass = 0.0;      // ∫_{s_hi}^∞ η_t
    double s_lo = 0.0, s_hi = 0.0;
};

SubordinationNodes subordination_nodes(const SpectralDecomposition& dec, double alpha, double t,
                                       const SubordinationQuad& quad = {});

/// ω(λ_k) = ∫ η_t(s) e^{-sλ_k} ds for every eigenvalue.
std::vector<double> subordination_weights(const SpectralDecomposition& dec, double alpha, double t,
                                          const SubordinationQuad& quad = {});

KernelSlice subordinate_kernel(const SpectralDecomposition& dec, double alpha, double t,
                               const SubordinationQuad& quad = {});

/// Literal Σ_q w_q K_{s_q} over heat tables. Cost grows with the node count;
/// intended for small grids.
KernelSlice subordinate_kernel_literal(const SpectralDecomposition& dec, double alpha, double t,
                                       const SubordinationQuad& quad = {});

}  // namespace subheat
