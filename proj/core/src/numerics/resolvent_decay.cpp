#include "radialspec/numerics/resolvent_decay.hpp"

#include "radialspec/errors.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>

namespace radialspec {

double resolvent_norm(const DiscretizedOperator& op, Complex lambda)
{
    Tridiagonal t = op.weighted ? op.matrix : discretize_rank1(op.m, op.grid, op.path, true).matrix;
    t.diag.array() -= lambda;
    return inverse_norm2(t);
}

ResolventDecayReport resolvent_norm_decay(int m, const ScalingParameter& theta, double ray_angle,
                                          const RadialGrid& grid, const std::vector<double>& radii, double min_angle)
{
    if (radii.size() < 2) throw ParameterError("decay fit needs at least two radii");
    const double spectral = -2.0 * theta.theta().imag();
    double gap = std::remainder(ray_angle - spectral, 2 * std::numbers::pi);
    if (std::abs(gap) <= min_angle) throw DomainError("ray runs along the rotated spectrum");

    const DiscretizedOperator op = discretize_rank1(m, grid, theta, true);
    ResolventDecayReport rep;
    rep.m = m;
    rep.theta = theta.theta();
    rep.ray_angle = ray_angle;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    rep.constant_min = std::numeric_limits<double>::infinity();
    for (double r : radii) {
        if (!(r > 0)) throw ParameterError("radii must be positive");
        const Complex lambda = std::polar(r, ray_angle);
        const double n = resolvent_norm(op, lambda);
        rep.lambdas.push_back(lambda);
        rep.norms.push_back(n);
        const double x = std::log(r), y = std::log(n);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        rep.constant_min = std::min(rep.constant_min, n * r);
        rep.constant_max = std::max(rep.constant_max, n * r);
    }
    const double k = static_cast<double>(radii.size());
    rep.exponent = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    rep.bound_stable = rep.constant_max <= 2.0 * rep.constant_min;
    return rep;
}

} // namespace radialspec
