#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "subheat/grid.hpp"
#include "subheat/potential.hpp"
#include "subheat/spectral.hpp"

namespace subheat {

struct BmoParams {
    double gamma = 0.25;
    double inner = 0.5;  // balls must lie in the inner box |x_d| <= inner * L
    int radii = 16;      // log-spaced radii per centre, plus r = ρ(centre)
};

struct BmoBreakdown {
    double small = 0.0;  // balls with r < ρ(x_B): oscillation about the mean
    double large = 0.0;  // balls with r >= ρ(x_B): plain size
    double total = 0.0;
};

/// sup over grid-centred balls of |B|^{-1-γ/n} ∫_B |f - f(B,V)|.
BmoBreakdown bmo_breakdown(const GridFunction& f, const BmoParams& params, const AuxFunction& rho);
double bmo_norm(const GridFunction& f, const BmoParams& params, const AuxFunction& rho);

/// max of sup |f(x)-f(y)|/|x-y|^γ and sup |f(x)|/ρ(x)^γ over the inner box.
double lipschitz_norm(const GridFunction& f, double gamma, const AuxFunction& rho, double inner = 0.5);

enum class AtomKind { oscillating, plain };

struct Atom {
    GridFunction a;
    Ball ball;
    double p = 1.0;  // n/(n+γ)
    bool cancels = false;
};

Atom make_atom(const Grid& grid, const Point& center, double radius, double gamma, const AuxFunction& rho,
               AtomKind kind);

/// Log-spaced times with trapezoid weights for dt/t.
struct TimeGrid {
    std::vector<double> t;
    std::vector<double> w;
    double tail_bound = 0.0;  // relative mass of the Gamma integrand left outside [t_1, t_J]
};

/// Covers the spectrum of dec for the integrand (tλ^α)^{2β} e^{-2tλ^α}.
/// points = 0 picks the count from a log-step of at most 0.35.
TimeGrid make_time_grid(const SpectralDecomposition& dec, double alpha, double beta, int points = 0);

/// F(x_i, t_j) sampled on a time grid, with the dt/t weights.
struct SpaceTimeField {
    Grid grid;
    std::vector<double> t;
    std::vector<double> w;
    Eigen::MatrixXd values;  // [point][time]
};

/// D^{L,β}_{α,t} f on every time of the grid.
SpaceTimeField d_field(const SpectralDecomposition& dec, double alpha, double beta, const GridFunction& f,
                       const TimeGrid& tg);

GridFunction g_function(const SpectralDecomposition& dec, double alpha, double beta, const GridFunction& f,
                        const TimeGrid& tg);
GridFunction area_function(const SpectralDecomposition& dec, double alpha, double beta, const GridFunction& f,
                           const TimeGrid& tg);

/// Ball B together with the height of its Carleson box in the field's time variable.
struct CarlesonBox {
    Ball ball;
    double height = 0.0;
};

/// sup over boxes of ν(B × (0, height)) / |B|^κ, with ν = Σ F(x_i,t_j) w_j h^n.
double carleson_norm(const SpaceTimeField& field, double kappa, const std::vector<CarlesonBox>& boxes);

/// Balls of the BMO family, each with height r^{2α} (time variable t of e^{-tL^α}).
std::vector<CarlesonBox> carleson_boxes(const Grid& grid, double alpha, int radii = 12, double inner = 0.5);

double reproducing_constant(double beta);  // 2^{2β}/Γ(2β)
double duality_constant(double beta);      // Γ(2β)/2^{2β}

/// ‖c ∫ D_t² f dt/t − f‖₂ / ‖f‖₂.
double reproducing_check(const SpectralDecomposition& dec, double alpha, double beta, const GridFunction& f,
                         const TimeGrid& tg);

struct PairingResult {
    bool orthogonal = false;
    double ratio = 0.0;
};

/// [∬ D_t f · D_t a dx dt/t] / [C ∫ f a dx].
PairingResult duality_pairing_check(const GridFunction& f, const GridFunction& a, const SpectralDecomposition& dec,
                                    double alpha, double beta, const TimeGrid& tg);

struct NormSet {
    std::string name;
    double n1 = 0.0;  // BMO norm
    double n2 = 0.0;  // sup_t t^{-γ/2α} ‖D_t f‖_∞
    double n3 = 0.0;  // Carleson quantity of D_t f
    double n4 = 0.0;  // sup_t t^{-γ/2α} ‖t^{1/2α} ∇_α e^{-tL^α} f‖_∞
    double n5 = 0.0;  // √ Carleson norm of |t ∇ e^{-t^{2α}L^α} f|² dx dt/t
    double get(int k) const;
};

struct EquivalenceParams {
    double alpha = 0.5;
    double beta = 1.0;
    double gamma = 0.25;
};

NormSet norm_set(const std::string& name, const GridFunction& f, const SpectralDecomposition& dec,
                 const AuxFunction& rho, const EquivalenceParams& params, const TimeGrid& tg);

struct SuiteMember {
    std::string name;
    GridFunction f;
};

/// Truncated |x - c|^γ profiles, atoms and random low-frequency combinations.
std::vector<SuiteMember> equivalence_suite(const SpectralDecomposition& dec, const AuxFunction& rho, double gamma,
                                           std::uint64_t seed, int size = 10);

struct RatioRange {
    int a = 0, b = 0;  // N_a / N_b
    double lo = 0.0, hi = 0.0;
};

struct EquivalenceTable {
    std::vector<NormSet> rows;
    std::vector<std::string> excluded;
    std::vector<RatioRange> ranges;
    double c_star = 0.0;  // max over pairs and members of max(r, 1/r)
};

EquivalenceTable equivalence_experiment(const std::vector<SuiteMember>& suite, const SpectralDecomposition& dec,
                                        const AuxFunction& rho, const EquivalenceParams& params);

}  // namespace subheat
