#pragma once

#include "radialspec/numerics/rank1_operator.hpp"

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace radialspec {

/// Samples values[i] at x0 + i h on the real line.
struct GridFunction {
    double x0 = 0.0;
    double h = 1.0;
    std::vector<double> values;

    double x(std::size_t i) const noexcept { return x0 + static_cast<double>(i) * h; }
    double mass() const;  ///< h sum values
};

/// Samples f on [a, b] with spacing h (the grid is centred so that it is
/// symmetric when a = -b).
GridFunction sample(const std::function<double(double)>& f, double a, double b, double h);

/// Smooth bump exp(-1 / (1 - (x/radius)^2)) supported in |x| < radius.
double bump(double x, double radius = 1.0);

/// Discrete heat-kernel smoothing with kernel e^{-(x-y)^2/t}, normalised per
/// source node so that the mass is preserved exactly. The grid is extended by
/// 8 sqrt(t) on both sides. ParameterError unless t > 0.
GridFunction mollify(const GridFunction& f, double t);

/// f_t(z) = (pi t)^{-1/2} h sum_j f_j e^{-(z - y_j)^2/t}: the heat extension
/// of a grid function, entire in z.
class HeatExtension {
public:
    HeatExtension(GridFunction f, double t);
    Complex operator()(Complex z) const;
    double t() const noexcept { return t_; }

private:
    GridFunction f_;
    double t_;
};

using AnalyticFunction = std::function<Complex(Complex)>;

/// Resolvent kernel of the rank-one model with m = 2 (hyperbolic 3-space):
/// G(s, d) = e^{-i s d} / (4 pi sinh d) at lambda = 1 + s^2; Im s < 0 on the
/// physical sheet. DomainError for d <= 0.
Complex h3_green_oracle(Complex s, double d);

struct MatrixElementOptions {
    /// Far enough out that the truncation does not show at 1e-6 on the
    /// physical sheet.
    double R = 60.0;
    double h = 0.01;
    /// Combine h and h/2 as (4 v_{h/2} - v_h) / 3.
    bool richardson = true;
    /// Reciprocal condition estimate below which the solve is flagged.
    double rcond_warning = 1e-13;
};

struct MatrixElement {
    Complex value;
    double rcond = 0.0;  ///< worst over the solves
    bool near_singular = false;
};

/// <U_{conj theta} f, R(lambda, theta) U_theta g> in the eta-weighted pairing
/// on the discretization: x solves (K - lambda V) x = V g(z) and the value is
/// sum_k V_k f(z_k) x_k. f and g are paired through their analytic extensions,
/// which is the L2(eta) product when f is real on the real axis.
MatrixElement matrix_element(int m, const ScalingPath& path, Complex lambda, const AnalyticFunction& f,
                             const AnalyticFunction& g, const MatrixElementOptions& options = {});

struct ContinuationOptions {
    MatrixElementOptions element;
    /// When set, use the localized scaling with profile on [T, T1].
    std::optional<std::pair<double, double>> localize;
    double cut_tolerance = 1e-9;
};

struct ContinuationReport {
    std::vector<Complex> lambdas;
    std::vector<Complex> thetas;
    double lambda0 = 0.0;
    /// values[i][j] at lambdas[i], thetas[j]; empty when the chart of theta
    /// does not contain lambda.
    std::vector<std::vector<std::optional<Complex>>> values;
    std::vector<std::vector<double>> rcond;
    /// consistency[j][k]: max over lambda in both charts of
    /// |v_j - v_k| / max(|v_j|, |v_k|); negative when no lambda is shared.
    std::vector<std::vector<double>> consistency;
    double max_inconsistency = 0.0;
    std::vector<std::string> warnings;
};

/// For each theta the chart is Y_beta with beta = |Im theta| on the side
/// given by the sign of Im theta; lambda is used when it is physical or
/// continued in that chart.
ContinuationReport matrix_element_continuation(int m, const AnalyticFunction& f, const AnalyticFunction& g,
                                               const std::vector<Complex>& lambdas, const std::vector<Complex>& thetas,
                                               const ContinuationOptions& options = {});

} // namespace radialspec
