#pragma once

#include "radialspec/config.hpp"
#include "radialspec/numerics/rank1_operator.hpp"
#include "radialspec/spectral_geometry.hpp"

#include <complex>
#include <vector>

namespace radialspec {

struct EigencloudReport {
    std::vector<Complex> eigenvalues;   ///< every eigenvalue, sorted
    std::vector<std::size_t> selected;  ///< |lambda| < cap and |lambda - lambda0| > margin
    std::vector<double> deviations;     ///< per selected: arg(lambda - gamma) - angle, in (-pi, pi]
    std::vector<std::size_t> ray;       ///< per selected: index of the nearest ray
    std::vector<std::size_t> outliers;  ///< indices into `eigenvalues` with |deviation| > tolerance
    double predicted_angle = 0.0;
    /// Principal axis through the ray base: (1/2) arg sum (lambda - gamma)^2.
    double fitted_angle = 0.0;
    double fraction_within = 0.0;
    double max_abs_deviation = 0.0;
    double mean_abs_deviation = 0.0;
    double energy_cap = 0.0;
    double margin = 0.0;
    double tolerance = 0.0;
};

/// Angular deviations of the eigenvalues from the predicted rays. All rays
/// must share one angle (ParameterError otherwise).
EigencloudReport eigencloud_ray_check(const std::vector<Complex>& eigenvalues, const std::vector<SpectralRay>& rays,
                                      const Config& config = {});
EigencloudReport eigencloud_ray_check(const DiscretizedOperator& op, const std::vector<SpectralRay>& rays,
                                      const Config& config = {});

} // namespace radialspec
