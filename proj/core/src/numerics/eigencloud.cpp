#include "radialspec/numerics/eigencloud.hpp"

#include "radialspec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace radialspec {

namespace {

double wrap(double a)
{
    a = std::remainder(a, 2 * std::numbers::pi);
    return a <= -std::numbers::pi ? a + 2 * std::numbers::pi : a;
}

double distance_to_ray(Complex z, const SpectralRay& ray)
{
    const Complex dir = std::polar(1.0, ray.angle);
    const double t = std::max(0.0, (std::conj(dir) * (z - ray.base)).real());
    return std::abs(z - (ray.base + t * dir));
}

} // namespace

EigencloudReport eigencloud_ray_check(const std::vector<Complex>& eigenvalues, const std::vector<SpectralRay>& rays,
                                      const Config& config)
{
    if (rays.empty()) throw ParameterError("eigencloud check needs at least one ray");
    for (const auto& r : rays)
        if (std::abs(wrap(r.angle - rays.front().angle)) > 1e-12)
            throw ParameterError("rays must share one angle");

    EigencloudReport rep;
    rep.eigenvalues = eigenvalues;
    rep.predicted_angle = rays.front().angle;
    rep.energy_cap = config.energy_cap;
    rep.margin = config.eigencloud_margin;
    rep.tolerance = config.eigencloud_tolerance;

    Complex lambda0 = rays.front().base;
    for (const auto& r : rays)
        if (r.base.real() < lambda0.real()) lambda0 = r.base;

    Complex axis = 0.0;
    std::size_t within = 0;
    double sum = 0.0;
    for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
        const Complex z = eigenvalues[i];
        if (!(std::abs(z) < rep.energy_cap) || !(std::abs(z - lambda0) > rep.margin)) continue;
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < rays.size(); ++j) {
            const double d = distance_to_ray(z, rays[j]);
            if (d < best_d) {
                best_d = d;
                best = j;
            }
        }
        const Complex rel = z - rays[best].base;
        const double dev = rel == Complex(0.0) ? 0.0 : wrap(std::arg(rel) - rep.predicted_angle);
        rep.selected.push_back(i);
        rep.deviations.push_back(dev);
        rep.ray.push_back(best);
        axis += rel * rel;
        if (std::abs(dev) <= rep.tolerance) {
            ++within;
        } else {
            rep.outliers.push_back(i);
        }
        sum += std::abs(dev);
        rep.max_abs_deviation = std::max(rep.max_abs_deviation, std::abs(dev));
    }
    if (!rep.selected.empty()) {
        rep.fraction_within = static_cast<double>(within) / static_cast<double>(rep.selected.size());
        rep.mean_abs_deviation = sum / static_cast<double>(rep.selected.size());
        // the axis is defined mod pi; take the branch nearest the prediction
        const double a = std::arg(axis) / 2;
        rep.fitted_angle = rep.predicted_angle + wrap(2 * (a - rep.predicted_angle)) / 2;
    } else {
        rep.fitted_angle = std::numeric_limits<double>::quiet_NaN();
    }
    return rep;
}

EigencloudReport eigencloud_ray_check(const DiscretizedOperator& op, const std::vector<SpectralRay>& rays,
                                      const Config& config)
{
    const Eigen::VectorXcd ev = eigenvalues(op, config);
    return eigencloud_ray_check(std::vector<Complex>(ev.data(), ev.data() + ev.size()), rays, config);
}

} // namespace radialspec
