#pragma once

#include <limits>
#include <string>
#include <vector>

#include "subheat/grid.hpp"

namespace subheat {

struct PotentialTerm {
    enum class Kind { constant, power, well };
    Kind kind = Kind::constant;
    double coefficient = 1.0;  // constant value, power prefactor or well height
    double sigma = 0.0;        // power exponent
    Point lo{};                // well sub-box corners
    Point hi{};
};

/// Nonnegative potential built as a sum of catalog terms. An empty sum is the
/// zero potential.
class PotentialSpec {
public:
    static PotentialSpec zero() { return {}; }
    static PotentialSpec constant(double c);
    static PotentialSpec power(double sigma, double coefficient = 1.0);
    static PotentialSpec well(const Point& lo, const Point& hi, double height);

    PotentialSpec& operator+=(const PotentialSpec& o);
    friend PotentialSpec operator+(PotentialSpec a, const PotentialSpec& b) { return a += b; }

    double operator()(const Point& x, int n) const;
    bool is_zero() const { return terms_.empty(); }
    /// True when V(x + y) depends on |y| only.
    bool radial_about(const Point& x, int n) const;
    /// V at distance s from a point the potential is radial about.
    double radial_value(const Point& x, int n, double s) const;
    const std::vector<PotentialTerm>& terms() const { return terms_; }
    std::string describe() const;

private:
    std::vector<PotentialTerm> terms_;
};

double eval_potential(const PotentialSpec& spec, const Point& x, int n);
GridFunction sample_potential(const Grid& grid, const PotentialSpec& spec);

/// Parse "zero", "constant:c", "power:sigma[:coef]", "well:lo,hi,height" and
/// sums joined by '+'. Well corners are taken equal along every axis.
PotentialSpec parse_potential(const std::string& text);

/// ∫_{B(x,r)} V. Radial quadrature when V is radial about x, polar
/// quadrature otherwise.
double ball_integral(const PotentialSpec& spec, int n, const Point& x, double r);

/// r^{2-n} ∫_{B(x,r)} V.
double rho_functional(const PotentialSpec& spec, int n, const Point& x, double r);

struct RhoResult {
    double rho = std::numeric_limits<double>::infinity();
    double functional = 0.0;  // value of the constraint at rho
    bool box_limited = false;
    int iterations = 0;
};

RhoResult compute_rho(const PotentialSpec& spec, const Grid& grid, const Point& x, double tol = 1e-10);

struct AuxFunction {
    Grid grid;
    std::vector<double> rho;  // +inf everywhere for the zero potential
    std::vector<char> box_limited;
    double tol = 1e-10;

    double operator[](std::size_t i) const { return rho[i]; }
    bool undefined() const { return !rho.empty() && rho[0] == std::numeric_limits<double>::infinity(); }
};

AuxFunction compute_aux(const PotentialSpec& spec, const Grid& grid, double tol = 1e-10);

struct ReverseHolderResult {
    double c_best = 0.0;
    bool holds = false;
    int excluded = 0;
};

ReverseHolderResult reverse_holder_constant(const PotentialSpec& spec, const Grid& grid, double q,
                                            const std::vector<Ball>& balls);

struct AuxLemmaReport {
    bool skipped = false;
    std::string reason;
    double doubling_constant = 0.0;
    double scaling_ratio = 0.0;  // sup of Lemma 2.2 left side over its right side with C = 1
    double comparability = 0.0;  // C2
    double gaussian_small = 0.0; // constant for sqrt(t) < rho, exponent delta0
    double gaussian_large = 0.0; // constant for sqrt(t) >= rho, fitted exponent
    double gaussian_exponent = 0.0;
    int pairs_used = 0;
};

struct AuxSamples {
    std::vector<Point> points;
    std::vector<double> radii;
    std::vector<double> times;
    double q = 2.0;
    double gauss_c = 0.25;
};

AuxLemmaReport check_aux_lemmas(const PotentialSpec& spec, const Grid& grid, const AuxSamples& samples);

/// Unit sphere area: 2, 2π, 4π.
double sphere_area(int n);

}  // namespace subheat
