#pragma once

#include "radialspec/config.hpp"
#include "radialspec/numerics/tridiagonal.hpp"
#include "radialspec/radial_operator.hpp"

#include <complex>
#include <cstddef>
#include <vector>

namespace radialspec {

/// Nodes r_k = k h, k = 0..N-1 with N = round(R/h); u vanishes at r = R.
/// The node at r = 0 carries a half cell, which is the even reflection
/// u_{-1} = u_1 in finite-volume form.
class RadialGrid {
public:
    /// ParameterError unless h > 0 and R >= 10 h.
    RadialGrid(double R, double h);

    double R() const noexcept { return R_; }
    double h() const noexcept { return h_; }
    std::size_t size() const noexcept { return n_; }
    double node(std::size_t k) const noexcept { return static_cast<double>(k) * h_; }
    /// The grid with half the spacing on the same interval.
    RadialGrid refined() const { return RadialGrid(R_, h_ / 2); }

private:
    double R_;
    double h_;
    std::size_t n_;
};

/// The complex path r -> z(r) along which the radial coordinate is scaled.
/// Global scaling is z = e^theta r; the localized form is z = e^{phi(r) theta} r
/// with a smoothstep phi that vanishes on [0, T] and equals 1 on [T1, inf).
class ScalingPath {
public:
    static ScalingPath global(const ScalingParameter& theta);
    /// ParameterError unless 0 < T < T1.
    static ScalingPath localized(const ScalingParameter& theta, double T, double T1);

    Complex theta() const noexcept { return theta_.theta(); }
    bool is_localized() const noexcept { return localized_; }
    double T() const noexcept { return T_; }
    double T1() const noexcept { return T1_; }

    double profile(double r) const;
    Complex z(double r) const;
    Complex dz(double r) const;

private:
    ScalingPath(const ScalingParameter& theta, bool localized, double T, double T1);

    ScalingParameter theta_;
    bool localized_ = false;
    double T_ = 0.0;
    double T1_ = 0.0;
};

/// Finite-volume discretization of -omega^{-1} d_z (omega d_z u) along the
/// path, omega = sinh(z)^m. For global scaling this is
/// e^{-2 theta}(-u'') - m e^{-theta} coth(e^theta r) u'.
/// The pencil is K - lambda V with K symmetric tridiagonal and V diagonal.
struct DiscretizedOperator {
    int m = 1;
    RadialGrid grid{10.0, 1.0};
    ScalingPath path = ScalingPath::global(ScalingParameter{});
    bool weighted = false;

    Tridiagonal stiffness;      ///< K, symmetric
    Eigen::VectorXcd volumes;   ///< V_k = int over cell k of omega(z) z' dr
    /// V^{-1} K, or V^{-1/2} K V^{-1/2} when weighted.
    Tridiagonal matrix;

    Complex theta() const noexcept { return path.theta(); }
};

/// ParameterError for m < 1; DiscretizationError naming the node when a
/// coefficient is not finite.
DiscretizedOperator discretize_rank1(int m, const RadialGrid& grid, const ScalingParameter& theta, bool weighted = false);
DiscretizedOperator discretize_rank1(int m, const RadialGrid& grid, const ScalingPath& path, bool weighted = false);

/// All eigenvalues, sorted by real part then imaginary part. ResourceError
/// above config.max_matrix_dim.
Eigen::VectorXcd eigenvalues(const DiscretizedOperator& op, const Config& config = {});

/// Bottom of the discrete spectrum at theta = 0.
double smallest_eigenvalue(int m, const RadialGrid& grid, const Config& config = {});

struct ConvergenceReport {
    std::vector<double> h;
    std::vector<double> lambda;
    /// (lambda_1 - lambda_2) / (lambda_2 - lambda_3): about 4 for a
    /// second-order scheme.
    double ratio = 0.0;
    double order = 0.0;  ///< log2(ratio)
    /// Richardson estimate of the h -> 0 limit at this R.
    double extrapolated = 0.0;
};

/// Smallest eigenvalue at h, h/2, h/4.
ConvergenceReport bottom_convergence(int m, const RadialGrid& grid, const Config& config = {});

} // namespace radialspec
