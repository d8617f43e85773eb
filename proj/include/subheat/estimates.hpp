#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "subheat/frac_derivative.hpp"
#include "subheat/potential.hpp"
#include "subheat/spectral.hpp"

namespace subheat {

enum class EstimateId { E1 = 1, E2, E3, E4, E5, E6, E7, E8, E9, E10, E11, E12 };

std::string estimate_name(EstimateId id);
EstimateId parse_estimate(const std::string& s);
std::vector<EstimateId> all_estimates();

/// Everything a certificate needs on one grid: the decomposition, ρ, and a
/// cache of kernel tables keyed by kind and time.
class Backend {
public:
    Backend(const Grid& grid, const PotentialSpec& V, double q = 0.0);

    const Grid& grid() const { return grid_; }
    const PotentialSpec& potential() const { return V_; }
    const SpectralDecomposition& dec() const { return dec_; }
    const AuxFunction& aux() const { return aux_; }
    double q() const { return q_; }

    std::shared_ptr<const KernelSlice> heat(double t);
    std::shared_ptr<const KernelSlice> frac_heat(double alpha, double t);
    std::shared_ptr<const KernelSlice> d_op(double alpha, double beta, double t);
    std::shared_ptr<const KernelSlice> d_tilde(double alpha, int m, double t);
    std::shared_ptr<const KernelSlice> q_kernel(int m, double t);
    std::shared_ptr<const Eigen::MatrixXd> gradient_norms(const std::string& key, const KernelSlice& K);
    void clear_cache();

private:
    std::shared_ptr<const KernelSlice> cached(const std::string& key, const Multiplier& m, double t);

    Grid grid_;
    PotentialSpec V_;
    SpectralDecomposition dec_;
    AuxFunction aux_;
    double q_;
    std::mutex mu_;
    std::map<std::string, std::shared_ptr<const KernelSlice>> kernels_;
    std::map<std::string, std::shared_ptr<const Eigen::MatrixXd>> gradients_;
};

struct EstimateParams {
    double alpha = 0.5;
    double beta = 1.0;
    int m = 1;             // order for E3 and the Q family of E12
    double N = 1.0;
    double delta = 0.0;    // 0 selects the estimate's default δ′
    double gauss_c = 0.0625;
    double ceiling = 1e4;
    double noise_floor = 1e-10;
    bool swap_xy = false;
};

/// Lattice of test points and times. Built from a grid, or copied from the
/// coarsest grid of a refinement study so every grid sees the same points.
struct TestLattice {
    double spacing = 0.0;  // physical spacing between lattice points
    double inner = 0.5;    // fraction of the half-width
    std::vector<double> times;
    std::vector<double> heat_times;
    std::vector<double> shifts;  // admissible Hölder shifts, physical lengths
    std::string describe() const;
};

TestLattice default_lattice(const Grid& grid, double alpha);

struct PartResult {
    std::string name;
    double c_meas = 0.0;
    Point argmax_x{}, argmax_y{};
    double argmax_t = 0.0;
    long evaluated = 0;
    long below_noise = 0;
    long excluded = 0;
    bool skipped = false;
    bool informational = false;  // logged, not part of the certificate's constant
    std::string reason;
};

struct BoundCertificate {
    EstimateId id = EstimateId::E1;
    EstimateParams params;
    double delta_used = 0.0;
    std::string lattice;
    double c_meas = 0.0;
    Point argmax_x{}, argmax_y{};
    double argmax_t = 0.0;
    std::optional<double> refine_ratio;
    bool pass = false;
    bool skipped = false;
    std::string reason;
    std::vector<PartResult> parts;
};

BoundCertificate certify(EstimateId id, const EstimateParams& params, Backend& backend,
                         const std::optional<TestLattice>& lattice = std::nullopt);

struct RefinementReport {
    std::vector<double> c_meas;
    std::vector<int> points_per_axis;
    double ratio = 0.0;  // C(h)/C(h/2) over the last two grids
    bool pass = false;
    BoundCertificate finest;
    std::vector<std::pair<std::string, double>> part_ratios;
};

/// Grids must share n, L and bc, with integer ratios of M, ordered coarse to fine.
RefinementReport refinement_study(EstimateId id, const EstimateParams& params, std::vector<Backend*> backends);

enum class FitAxis { spatial, temporal, rho };

struct SlopeFit {
    double slope = 0.0;
    double r2 = 0.0;
    double expected = 0.0;
    int points = 0;
    bool skipped = false;
    std::string reason;
};

struct FitOptions {
    double scale = 0.5;  // T = t^{1/2α} on the spatial and rho axes, |x-y| on the temporal axis
    double lo = 4.0;     // window in units of the scale
    double hi = 32.0;
    int samples = 12;
};

/// Log-log regression of E1 (K_{α,t}) or E9 (D^β_{α,t}) along one axis.
SlopeFit decay_exponent_fit(EstimateId id, const EstimateParams& params, FitAxis axis, Backend& backend,
                            const FitOptions& opt = {});

}  // namespace subheat
