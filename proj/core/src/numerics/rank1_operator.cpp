#include "radialspec/numerics/rank1_operator.hpp"

#include "radialspec/errors.hpp"

#include <array>
#include <cmath>

namespace radialspec {

RadialGrid::RadialGrid(double R, double h) : R_(R), h_(h), n_(0)
{
    if (!std::isfinite(R) || !std::isfinite(h) || !(h > 0)) throw ParameterError("grid spacing h must be > 0");
    if (!(R >= 10 * h)) throw ParameterError("grid needs R >= 10 h");
    n_ = static_cast<std::size_t>(std::llround(R / h));
}

ScalingPath::ScalingPath(const ScalingParameter& theta, bool localized, double T, double T1)
    : theta_(theta), localized_(localized), T_(T), T1_(T1)
{
}

ScalingPath ScalingPath::global(const ScalingParameter& theta) { return ScalingPath(theta, false, 0.0, 0.0); }

ScalingPath ScalingPath::localized(const ScalingParameter& theta, double T, double T1)
{
    if (!(T > 0) || !(T1 > T) || !std::isfinite(T1)) throw ParameterError("localized scaling needs 0 < T < T1");
    return ScalingPath(theta, true, T, T1);
}

double ScalingPath::profile(double r) const
{
    if (!localized_) return 1.0;
    if (r <= T_) return 0.0;
    if (r >= T1_) return 1.0;
    const double x = (r - T_) / (T1_ - T_);
    return x * x * x * (10.0 - 15.0 * x + 6.0 * x * x);
}

Complex ScalingPath::z(double r) const { return std::exp(profile(r) * theta()) * r; }

Complex ScalingPath::dz(double r) const
{
    if (!localized_) return theta_.w();
    double dphi = 0.0;
    if (r > T_ && r < T1_) {
        const double x = (r - T_) / (T1_ - T_);
        dphi = 30.0 * x * x * (1.0 - x) * (1.0 - x) / (T1_ - T_);
    }
    return std::exp(profile(r) * theta()) * (1.0 + theta() * dphi * r);
}

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// 4-point Gauss-Legendre on [a, b] of sinh(z(r))^m z'(r)
Complex cell_volume(const ScalingPath& path, int m, double a, double b)
{
    static constexpr std::array<double, 4> x{-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                                             0.8611363115940526};
    static constexpr std::array<double, 4> w{0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                                             0.3478548451374538};
    const double mid = (a + b) / 2, half = (b - a) / 2;
    Complex s = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        const double r = mid + half * x[i];
        s += w[i] * std::pow(std::sinh(path.z(r)), m) * path.dz(r);
    }
    return half * s;
}

} // namespace

DiscretizedOperator discretize_rank1(int m, const RadialGrid& grid, const ScalingParameter& theta, bool weighted)
{
    return discretize_rank1(m, grid, ScalingPath::global(theta), weighted);
}

DiscretizedOperator discretize_rank1(int m, const RadialGrid& grid, const ScalingPath& path, bool weighted)
{
    if (m < 1) throw ParameterError("multiplicity m must be >= 1");
    const auto n = static_cast<Eigen::Index>(grid.size());
    const double h = grid.h();

    DiscretizedOperator op;
    op.m = m;
    op.grid = grid;
    op.path = path;
    op.weighted = weighted;

    // flux[k] sits at r_k + h/2 and couples nodes k and k+1 (k = n-1 couples to the boundary)
    Eigen::VectorXcd flux(n);
    op.volumes.resize(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double r = grid.node(static_cast<std::size_t>(k));
        const double rh = r + h / 2;
        flux(k) = std::pow(std::sinh(path.z(rh)), m) / (path.dz(rh) * h);
        op.volumes(k) = cell_volume(path, m, std::max(0.0, r - h / 2), rh);
        if (!finite(flux(k)) || !finite(op.volumes(k)) || op.volumes(k) == Complex(0.0))
            throw DiscretizationError(static_cast<std::size_t>(k),
                                      "stencil coefficient not finite at r = " + std::to_string(r));
    }

    Tridiagonal& K = op.stiffness;
    K.diag = flux;
    K.diag.tail(n - 1) += flux.head(n - 1);
    K.lower = -flux.head(n - 1);
    K.upper = K.lower;

    Tridiagonal& A = op.matrix;
    if (weighted) {
        const Eigen::VectorXcd s = op.volumes.cwiseSqrt().cwiseInverse();
        A.diag = K.diag.cwiseProduct(s).cwiseProduct(s);
        A.lower = K.lower.cwiseProduct(s.head(n - 1)).cwiseProduct(s.tail(n - 1));
        A.upper = A.lower;
    } else {
        const Eigen::VectorXcd vi = op.volumes.cwiseInverse();
        A.diag = K.diag.cwiseProduct(vi);
        A.lower = K.lower.cwiseProduct(vi.tail(n - 1));
        A.upper = K.upper.cwiseProduct(vi.head(n - 1));
    }
    return op;
}

Eigen::VectorXcd eigenvalues(const DiscretizedOperator& op, const Config& config)
{
    const auto n = op.matrix.size();
    if (static_cast<std::size_t>(n) > config.max_matrix_dim)
        throw ResourceError("matrix dimension " + std::to_string(n) + " exceeds max_matrix_dim");
    // the symmetric form has the same spectrum and lets us use symmetric solvers
    const Eigen::VectorXcd s = op.volumes.cwiseSqrt().cwiseInverse();
    const Eigen::VectorXcd d = op.stiffness.diag.cwiseProduct(s).cwiseProduct(s);
    const Eigen::VectorXcd e = op.stiffness.lower.cwiseProduct(s.head(n - 1)).cwiseProduct(s.tail(n - 1));
    const bool real = d.imag().isZero(0.0) && e.imag().isZero(0.0);
    if (real) return symmetric_tridiagonal_eigenvalues(d.real(), e.real()).cast<Complex>();
    return complex_symmetric_tridiagonal_eigenvalues(d, e);
}

double smallest_eigenvalue(int m, const RadialGrid& grid, const Config& config)
{
    return eigenvalues(discretize_rank1(m, grid, ScalingParameter(0.0), true), config)(0).real();
}

ConvergenceReport bottom_convergence(int m, const RadialGrid& grid, const Config& config)
{
    ConvergenceReport rep;
    RadialGrid g = grid;
    for (int i = 0; i < 3; ++i) {
        rep.h.push_back(g.h());
        rep.lambda.push_back(smallest_eigenvalue(m, g, config));
        if (i < 2) g = g.refined();
    }
    rep.ratio = (rep.lambda[0] - rep.lambda[1]) / (rep.lambda[1] - rep.lambda[2]);
    rep.order = std::log2(std::abs(rep.ratio));
    rep.extrapolated = (4.0 * rep.lambda[2] - rep.lambda[1]) / 3.0;
    return rep;
}

} // namespace radialspec
