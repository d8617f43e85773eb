#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace subheat {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    std::size_t size() const { return nodes.size(); }
};

/// Gauss-Legendre rule with n nodes mapped to [a, b].
QuadratureRule gauss_legendre(int n, double a, double b);

/// Gauss-Jacobi rule for the weight (1-x)^a (1+x)^b on [-1, 1], a, b > -1.
/// Nodes and weights come from the Golub-Welsch eigenproblem.
QuadratureRule gauss_jacobi(int n, double a, double b);

/// Rule for integrals of g(u) u^c du over [0, u0] with c > -1. The weights
/// already contain u^c; callers multiply by g at the nodes only.
QuadratureRule left_singular_rule(int n, double c, double u0);

/// Composite Simpson on [a, b] with an even number of intervals.
double simpson(const std::function<double(double)>& f, double a, double b, int intervals);

std::vector<double> log_spaced(double lo, double hi, int count);

}  // namespace subheat
