#pragma once

#include "radialspec/rational.hpp"
#include "radialspec/root_system.hpp"
#include "radialspec/wall_lattice.hpp"

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <vector>

namespace radialspec {

using Complex = std::complex<double>;

/// Second-order jet of a function on a at a point. Derivatives are coordinate
/// partials in the basis of a; metric contractions use gram^{-1}.
struct RadialJet {
    Eigen::VectorXd point;
    Complex value = 0.0;
    Eigen::VectorXcd gradient;
    Eigen::MatrixXcd hessian;
    /// When set, regularity of the point is decided exactly.
    std::optional<QVector> exact_point;

    static RadialJet constant(Eigen::VectorXd point, Complex value);
};

/// theta with |Im theta| < pi/2 and w = e^theta.
class ScalingParameter {
public:
    ScalingParameter(Complex theta = 0.0);  // NOLINT: implicit on purpose
    ScalingParameter(double theta) : ScalingParameter(Complex(theta)) {}  // NOLINT
    Complex theta() const noexcept { return theta_; }
    Complex w() const noexcept { return w_; }

private:
    Complex theta_;
    Complex w_;
};

Eigen::VectorXd to_eigen(const QVector& v);
Eigen::MatrixXd to_eigen(const QMatrix& m);

/// coth(z) written as 1 + 2e^{-2z}/(1 - e^{-2z}) on Re z >= 0 (odd extension).
Complex stable_coth(Complex z);
/// coth(z) - 1 for Re z > 0 without cancellation.
Complex coth_minus_one(Complex z);

/// prod over positive roots of sinh(alpha(a))^m; 0 on walls. DomainError
/// outside the closed positive chamber.
double eval_eta(const RootSystem& rs, const Eigen::VectorXd& a);

/// alpha(a) != 0 for every root (exact when the jet carries an exact point).
bool is_regular(const RootSystem& rs, const RadialJet& jet);

/// Delta_a u = -sum gram^{ij} d_i d_j u.
Complex flat_laplacian(const RootSystem& rs, const RadialJet& jet);
/// X u = -du(X) for a vector X of a.
Complex vector_action(const Eigen::VectorXd& x, const RadialJet& jet);

/// (Delta_rad,theta u)(a) = w^{-2} Delta_a u + w^{-1} sum m coth(w alpha(a)) H_alpha u.
/// DomainError at non-regular points.
Complex apply_radial(const RootSystem& rs, const RadialJet& jet, const ScalingParameter& theta = {});

/// J_theta(a) = w^n prod_{Lambda+} (sinh(w alpha(a)) / sinh(alpha(a)))^m, even in
/// each alpha(a) so it extends across the walls.
Complex jacobian(const RootSystem& rs, const Eigen::VectorXd& a, const ScalingParameter& theta);

/// Jet of e^{c l(x)} u from the jet of u.
RadialJet multiply_exponential(const RadialJet& jet, const Eigen::VectorXd& covector, Complex c);

struct ErrorTerm {
    std::size_t root = 0;
    QVector alpha;
    int mult = 1;
    QVector h_alpha;
};

/// Split of Delta_rad at a lattice index b into the tangential operator on
/// S_b, the radial operator of the subsystem on S^b, and the error terms of
/// the roots not vanishing on S_b.
struct ProductModelData {
    std::size_t b = 0;
    SubsystemData subsystem;
    std::vector<ErrorTerm> error_terms;
    Eigen::MatrixXd q_tangential;  ///< gram^{-1} restricted to S_b (ambient coordinates)
    Eigen::MatrixXd q_subsystem;   ///< gram^{-1} restricted to S^b
    Eigen::VectorXd h_rho_diff;    ///< H_{rho - rho_b}
    Eigen::VectorXd h_rho_b;
};

/// DomainError for b = *.
ProductModelData decompose(const RootSystem& rs, const WallLattice& lat, std::size_t b);

struct ProductModelParts {
    Complex tangential;
    Complex subsystem;
    Complex error;
    Complex total() const { return tangential + subsystem + error; }
};

/// The three summands at theta = 0.
ProductModelParts evaluate_parts(const RootSystem& rs, const ProductModelData& d, const RadialJet& jet);

/// Delta_{S_b} u = -tr(Q_b Hess u).
Complex tangential_laplacian(const ProductModelData& d, const RadialJet& jet);
/// w^{-2} Delta_{S_b} u + 2 w^{-1} H_{rho - rho_b} u.
Complex tangential_scaled(const ProductModelData& d, const RadialJet& jet, const ScalingParameter& theta);
/// w^{-2} Delta_{S_b} u + |rho - rho_b|^2 u, the tangential operator after conjugation.
Complex tangential_conjugated(const ProductModelData& d, const RadialJet& jet, const ScalingParameter& theta);

/// 2e^{-2t}/(1 - e^{-2t}) with t = c|a|: bound for every error coefficient on
/// the cone alpha(a) >= c|a|.
double error_coefficient_bound(double c, double norm_a);
/// min over error-term roots of alpha(a)/|a|.
double cone_constant(const RootSystem& rs, const ProductModelData& d, const Eigen::VectorXd& a);

struct DiagonalizingChange {
    QMatrix gamma;
    QMatrix lower;   ///< L in Gamma = L D L^T, unit lower-triangular
    QMatrix theta;   ///< L^{-1}
    QVector diagonal;
};

/// Exact LDL^T of Gamma_pq = <H_p, H_q> over the simples taken in `order`
/// (default: the stored order).
DiagonalizingChange gamma_ldu(const RootSystem& rs, const std::vector<std::size_t>& order = {});

/// ((e^rho Delta_a e^{-rho} + |rho|^2) - lambda) u at a for u = exp((rho - beta)(H)),
/// lambda = |rho|^2 - beta.beta.
Complex plane_wave_residual(const RootSystem& rs, const Eigen::VectorXd& beta, const Eigen::VectorXd& a);

} // namespace radialspec
