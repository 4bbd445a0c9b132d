#include "radialspec/numerics/continuation.hpp"

#include "radialspec/errors.hpp"
#include "radialspec/spectral_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace radialspec {

double GridFunction::mass() const
{
    double s = 0.0;
    for (double v : values) s += v;
    return s * h;
}

GridFunction sample(const std::function<double(double)>& f, double a, double b, double h)
{
    if (!(h > 0) || !(b > a)) throw ParameterError("sample needs h > 0 and a < b");
    const auto n = static_cast<std::size_t>(std::floor((b - a) / h + 1e-9));
    GridFunction g;
    g.h = h;
    g.x0 = (a + b) / 2 - static_cast<double>(n) * h / 2;
    g.values.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) g.values[i] = f(g.x(i));
    return g;
}

double bump(double x, double radius)
{
    const double u = x / radius;
    if (std::abs(u) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - u * u));
}

GridFunction mollify(const GridFunction& f, double t)
{
    if (!(t > 0) || !std::isfinite(t)) throw ParameterError("mollify needs t > 0");
    if (f.values.empty() || !(f.h > 0)) throw ParameterError("mollify needs a non-empty grid function");
    const auto pad = static_cast<std::size_t>(std::ceil(8.0 * std::sqrt(t) / f.h));
    GridFunction out;
    out.h = f.h;
    out.x0 = f.x0 - static_cast<double>(pad) * f.h;
    out.values.assign(f.values.size() + 2 * pad, 0.0);
    std::vector<double> kernel(out.values.size());
    for (std::size_t j = 0; j < f.values.size(); ++j) {
        if (f.values[j] == 0.0) continue;
        // column j of the kernel, normalised to unit discrete mass
        double norm = 0.0;
        for (std::size_t i = 0; i < out.values.size(); ++i) {
            const double d = out.x(i) - f.x(j);
            kernel[i] = std::exp(-d * d / t);
            norm += kernel[i];
        }
        for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += f.values[j] * kernel[i] / norm;
    }
    return out;
}

HeatExtension::HeatExtension(GridFunction f, double t) : f_(std::move(f)), t_(t)
{
    if (!(t > 0)) throw ParameterError("heat extension needs t > 0");
}

Complex HeatExtension::operator()(Complex z) const
{
    Complex s = 0.0;
    for (std::size_t j = 0; j < f_.values.size(); ++j) {
        if (f_.values[j] == 0.0) continue;
        const Complex d = z - f_.x(j);
        s += f_.values[j] * std::exp(-d * d / t_);
    }
    return s * f_.h / std::sqrt(std::numbers::pi * t_);
}

Complex h3_green_oracle(Complex s, double d)
{
    if (!(d > 0)) throw DomainError("h3 Green function needs d > 0");
    return std::exp(Complex(0.0, -1.0) * s * d) / (4.0 * std::numbers::pi * std::sinh(d));
}

namespace {

struct Solve {
    Complex value;
    double rcond;
};

Solve solve_once(int m, const ScalingPath& path, const RadialGrid& grid, Complex lambda, const AnalyticFunction& f,
                 const AnalyticFunction& g)
{
    // solve in the symmetrised variables y = V^{1/2} x; the raw system has
    // rows scaled by sinh^m and its condition number says nothing useful
    const DiscretizedOperator op = discretize_rank1(m, grid, path, true);
    Tridiagonal t = op.matrix;
    t.diag.array() -= lambda;
    const TridiagonalLU lu(t);
    const auto n = t.size();
    const Eigen::VectorXcd root = op.volumes.cwiseSqrt();
    Eigen::VectorXcd fz(n), rhs(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex z = path.z(grid.node(static_cast<std::size_t>(k)));
        fz(k) = root(k) * f(z);
        rhs(k) = root(k) * g(z);
    }
    const Eigen::VectorXcd y = lu.solve(rhs);
    return {fz.cwiseProduct(y).sum(), lu.rcond()};
}

} // namespace

MatrixElement matrix_element(int m, const ScalingPath& path, Complex lambda, const AnalyticFunction& f,
                             const AnalyticFunction& g, const MatrixElementOptions& options)
{
    const RadialGrid grid(options.R, options.h);
    const Solve a = solve_once(m, path, grid, lambda, f, g);
    MatrixElement out{a.value, a.rcond, false};
    if (options.richardson) {
        const Solve b = solve_once(m, path, grid.refined(), lambda, f, g);
        out.value = (4.0 * b.value - a.value) / 3.0;
        out.rcond = std::min(a.rcond, b.rcond);
    }
    out.near_singular = out.rcond < options.rcond_warning;
    return out;
}

ContinuationReport matrix_element_continuation(int m, const AnalyticFunction& f, const AnalyticFunction& g,
                                               const std::vector<Complex>& lambdas, const std::vector<Complex>& thetas,
                                               const ContinuationOptions& options)
{
    if (thetas.empty() || lambdas.empty()) throw ParameterError("continuation needs lambdas and thetas");
    const ThresholdSet ts = thresholds(rank_one(m));
    ContinuationReport rep;
    rep.lambdas = lambdas;
    rep.thetas = thetas;
    const std::size_t nl = lambdas.size(), nt = thetas.size();
    rep.values.assign(nl, std::vector<std::optional<Complex>>(nt));
    rep.rcond.assign(nl, std::vector<double>(nt, 0.0));

    for (std::size_t j = 0; j < nt; ++j) {
        const ScalingParameter theta(thetas[j]);
        const Side side = thetas[j].imag() > 0 ? Side::upper : Side::lower;
        const RiemannAtlas atlas = build_atlas(ts, side, options.cut_tolerance);
        rep.lambda0 = atlas.lambda0;
        const double beta = std::abs(thetas[j].imag());
        const ScalingPath path = options.localize
                                     ? ScalingPath::localized(theta, options.localize->first, options.localize->second)
                                     : ScalingPath::global(theta);
        for (std::size_t i = 0; i < nl; ++i) {
            const SheetClass c = sheet_classify(lambdas[i], beta, atlas);
            if (c != SheetClass::physical && c != SheetClass::continued_in_chart) continue;
            const MatrixElement e = matrix_element(m, path, lambdas[i], f, g, options.element);
            rep.values[i][j] = e.value;
            rep.rcond[i][j] = e.rcond;
            if (e.near_singular) {
                std::ostringstream os;
                os.precision(17);
                os << "near-singular solve at lambda = " << lambdas[i] << ", theta = " << thetas[j]
                   << " (rcond " << e.rcond << ")";
                rep.warnings.push_back(os.str());
            }
        }
    }

    rep.consistency.assign(nt, std::vector<double>(nt, -1.0));
    for (std::size_t j = 0; j < nt; ++j)
        for (std::size_t k = 0; k < nt; ++k)
            for (std::size_t i = 0; i < nl; ++i) {
                const auto& a = rep.values[i][j];
                const auto& b = rep.values[i][k];
                if (!a || !b) continue;
                const double den = std::max(std::abs(*a), std::abs(*b));
                const double d = den == 0 ? 0.0 : std::abs(*a - *b) / den;
                rep.consistency[j][k] = std::max(rep.consistency[j][k], d);
                rep.max_inconsistency = std::max(rep.max_inconsistency, d);
            }
    return rep;
}

} // namespace radialspec
