#pragma once

#include "radialspec/numerics/rank1_operator.hpp"

#include <complex>
#include <vector>

namespace radialspec {

/// ||(L_theta - lambda)^{-1}||_2 for the eta^{1/2}-symmetrised discretization.
double resolvent_norm(const DiscretizedOperator& op, Complex lambda);

struct ResolventDecayReport {
    int m = 1;
    Complex theta;
    double ray_angle = 0.0;
    std::vector<Complex> lambdas;
    std::vector<double> norms;
    /// Least-squares slope of log ||R|| against log |lambda|.
    double exponent = 0.0;
    /// ||R|| |lambda| over the samples.
    double constant_min = 0.0;
    double constant_max = 0.0;
    /// constant_max <= 2 constant_min: the C/|lambda| bound holds with one C.
    bool bound_stable = false;
};

/// Samples lambda = |lambda| e^{i ray_angle} at the given radii.
/// DomainError when the ray is within `min_angle` of the rotated spectrum
/// direction -2 Im theta.
ResolventDecayReport resolvent_norm_decay(int m, const ScalingParameter& theta, double ray_angle,
                                          const RadialGrid& grid = RadialGrid(30.0, 0.01),
                                          const std::vector<double>& radii = {10.0, 100.0, 1000.0},
                                          double min_angle = 0.1);

} // namespace radialspec
