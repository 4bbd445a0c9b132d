#include "convention_lock.hpp"
#include "oracles.hpp"

#include "radialspec/errors.hpp"
#include "radialspec/radial_operator.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace radialspec;

namespace {

// A2 realised on the trace-zero diagonal matrices of R^3. Coordinates c of a
// in the simple-coroot basis map to x = c1 (1,-1,0) + c2 (0,1,-1).
Eigen::Matrix<double, 3, 2> a2_embedding()
{
    Eigen::Matrix<double, 3, 2> h;
    h << 1, 0, -1, 1, 0, -1;
    return h;
}

// F(x) = exp(k.x) + x1^2 x2 and its derivatives on R^3.
const Eigen::Vector3d k_test(0.3, -0.5, 0.1);
double f3(const Eigen::Vector3d& x) { return std::exp(k_test.dot(x)) + x(0) * x(0) * x(1); }
Eigen::Vector3d grad_f3(const Eigen::Vector3d& x)
{
    Eigen::Vector3d g = k_test * std::exp(k_test.dot(x));
    g(0) += 2 * x(0) * x(1);
    g(1) += x(0) * x(0);
    return g;
}
Eigen::Matrix3d hess_f3(const Eigen::Vector3d& x)
{
    Eigen::Matrix3d h = k_test * k_test.transpose() * std::exp(k_test.dot(x));
    h(0, 0) += 2 * x(1);
    h(0, 1) += 2 * x(0);
    h(1, 0) += 2 * x(0);
    return h;
}

RadialJet a2_jet(const Eigen::Vector2d& c)
{
    const auto h = a2_embedding();
    const Eigen::Vector3d x = h * c;
    RadialJet j;
    j.point = c;
    j.value = f3(x);
    j.gradient = (h.transpose() * grad_f3(x)).cast<Complex>();
    j.hessian = (h.transpose() * hess_f3(x) * h).cast<Complex>();
    return j;
}

// -w^{-2} (Laplacian along the plane) - w^{-1} sum_{i<j} coth(w(x_i - x_j)) (d_i - d_j) F,
// all derivatives by central differences.
Complex a2_radial_fd(const Eigen::Vector2d& c, Complex w)
{
    const Eigen::Vector3d x = a2_embedding() * c;
    const double h = 1e-4;
    const Eigen::Vector3d e1 = Eigen::Vector3d(1, -1, 0) / std::sqrt(2.0);
    const Eigen::Vector3d e2 = Eigen::Vector3d(1, 1, -2) / std::sqrt(6.0);
    double lap = 0;
    for (const auto& e : {e1, e2}) lap += (f3(x + h * e) - 2 * f3(x) + f3(x - h * e)) / (h * h);
    Complex first = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            Eigen::Vector3d d = Eigen::Vector3d::Zero();
            d(i) = 1;
            d(j) = -1;
            const double deriv = (f3(x + h * d) - f3(x - h * d)) / (2 * h);
            const Complex z = w * (x(i) - x(j));
            first += std::cosh(z) / std::sinh(z) * deriv;
        }
    return -lap / (w * w) - first / w;
}

RadialJet random_jet(std::size_t n, std::mt19937& gen)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    RadialJet j;
    j.point = Eigen::VectorXd::NullaryExpr(static_cast<Eigen::Index>(n), [&] { return u(gen); });
    j.value = Complex(u(gen), u(gen));
    j.gradient = Eigen::VectorXcd::NullaryExpr(static_cast<Eigen::Index>(n), [&] { return Complex(u(gen), u(gen)); });
    Eigen::MatrixXcd m = Eigen::MatrixXcd::NullaryExpr(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n),
                                                      [&] { return Complex(u(gen), u(gen)); });
    j.hessian = m + m.transpose();
    return j;
}

} // namespace

TEST(RadialOperator, Eta)
{
    Eigen::VectorXd r(1);
    r << 1.0;
    EXPECT_NEAR(eval_eta(rank_one(1), r), 1.1752011936438014, 1e-13);
    EXPECT_NEAR(eval_eta(rank_one(2), r), std::pow(1.1752011936438014, 2), 1e-13);
    Eigen::VectorXd a(2);
    a << 1.0, 1.0;  // alpha1 = alpha2 = 1, alpha1 + alpha2 = 2
    EXPECT_NEAR(eval_eta(a_series(2), a), std::sinh(1.0) * std::sinh(1.0) * std::sinh(2.0), 1e-12);
    EXPECT_NEAR(eval_eta(a_series(2), a), 5.00905, 1e-5);
    a << 1.0, 0.5;  // alpha2 = 0
    EXPECT_EQ(eval_eta(a_series(2), a), 0.0);
    a << -1.0, 0.0;
    EXPECT_THROW(eval_eta(a_series(2), a), DomainError);
}

TEST(RadialOperator, RankOneSquare)
{
    RadialJet j = RadialJet::constant(Eigen::VectorXd::Ones(1), 1.0);
    j.gradient(0) = 2.0;
    j.hessian(0, 0) = 2.0;
    const Complex v = apply_radial(rank_one(1), j);
    EXPECT_NEAR(v.real(), -2.0 - 2.0 * std::cosh(1.0) / std::sinh(1.0), 1e-13);
    EXPECT_NEAR(v.real(), -4.6261, 1e-4);
    EXPECT_EQ(v.imag(), 0.0);
}

TEST(RadialOperator, ConstantsAreAnnihilated)
{
    for (Complex theta : {Complex(0.0), Complex(0.4, 0.0), Complex(0.1, 0.7), Complex(-0.3, -1.2)}) {
        Eigen::VectorXd a(3);
        a << 0.7, 0.4, 1.3;
        EXPECT_EQ(apply_radial(a_series(3), RadialJet::constant(a, 3.0), theta), Complex(0.0)) << theta;
    }
}

TEST(RadialOperator, MatchesEmbeddedA2)
{
    const auto rs = a_series(2);
    for (Complex theta : {Complex(0.0), Complex(0.2, 0.3), Complex(-0.1, -0.6)}) {
        for (const Eigen::Vector2d c : {Eigen::Vector2d(0.7, 0.3), Eigen::Vector2d(-0.4, 0.9), Eigen::Vector2d(1.5, 2.5)}) {
            const Complex got = apply_radial(rs, a2_jet(c), theta);
            const Complex want = a2_radial_fd(c, std::exp(theta));
            EXPECT_LT(std::abs(got - want), 1e-5 * (1 + std::abs(want))) << theta << " " << c.transpose();
        }
    }
}

TEST(RadialOperator, RejectsSingularPoints)
{
    const auto rs = a_series(2);
    RadialJet j = a2_jet(Eigen::Vector2d(1.0, 0.5));  // alpha2 = 0
    EXPECT_FALSE(is_regular(rs, j));
    EXPECT_THROW(apply_radial(rs, j), DomainError);
    j.exact_point = QVector{Rational(1), Rational(1, 2)};
    EXPECT_FALSE(is_regular(rs, j));
    j.exact_point = QVector{Rational(1), Rational(1, 3)};
    EXPECT_TRUE(is_regular(rs, j));
    EXPECT_THROW(ScalingParameter(Complex(0.0, 1.6)), DomainError);
}

TEST(RadialOperator, WeylInvariant)
{
    // (L (u o w^{-1}))(w a) = (L u)(a)
    for (int n : {2, 3}) {
        const auto rs = a_series(n);
        std::mt19937 gen(11 + n);
        RadialJet j = random_jet(rs.dim(), gen);
        const Complex ref = apply_radial(rs, j, Complex(0.1, 0.2));
        for (const auto& w : weyl_group(rs)) {
            const Eigen::MatrixXd m = to_eigen(w.matrix());
            const Eigen::MatrixXd mi = m.inverse();
            RadialJet k;
            k.point = m * j.point;
            k.value = j.value;
            k.gradient = mi.transpose().cast<Complex>() * j.gradient;
            k.hessian = mi.transpose().cast<Complex>() * j.hessian * mi.cast<Complex>();
            EXPECT_LT(std::abs(apply_radial(rs, k, Complex(0.1, 0.2)) - ref), 1e-11 * (1 + std::abs(ref)));
        }
    }
}

TEST(RadialOperator, Jacobian)
{
    Eigen::VectorXd r(1);
    r << 1.0;
    EXPECT_EQ(jacobian(rank_one(1), r, Complex(0.0)), Complex(1.0));
    const Complex j = jacobian(rank_one(1), r, Complex(std::log(2.0)));
    EXPECT_NEAR(j.real(), 2.0 * std::sinh(2.0) / std::sinh(1.0), 1e-12);
    EXPECT_NEAR(j.real(), 6.1723, 1e-4);

    // even across walls, smooth through them, and the three evaluation
    // regimes agree where they meet
    const Complex theta(0.2, 0.4);
    const Complex w = std::exp(theta);
    for (double x : {0.0, 1e-9, 9.9e-5, 1.01e-4, 0.3, 19.9, 20.1, 35.0}) {
        r << x;
        const Complex jp = jacobian(rank_one(2), r, theta);
        r << -x;
        EXPECT_EQ(jacobian(rank_one(2), r, theta), jp);
        const Complex direct = x == 0 ? w * w * w : w * std::pow(std::sinh(w * x) / std::sinh(x), 2.0);
        EXPECT_LT(std::abs(jp - direct), 1e-10 * std::abs(direct)) << x;
        EXPECT_GT(std::abs(jp), 0.0);
    }

    const auto rs = a_series(2);
    Eigen::VectorXd a(2);
    a << 0.8, 0.3;
    const Complex ja = jacobian(rs, a, theta);
    for (const auto& g : weyl_group(rs)) {
        const Eigen::VectorXd b = to_eigen(g.matrix()) * a;
        EXPECT_LT(std::abs(jacobian(rs, b, theta) - ja), 1e-12 * std::abs(ja));
    }
}

TEST(RadialOperator, MultiplyExponential)
{
    // (d/dx)^k of e^{cx} x^2 at x = 0.5
    RadialJet j = RadialJet::constant(Eigen::VectorXd::Constant(1, 0.5), 0.25);
    j.gradient(0) = 1.0;
    j.hessian(0, 0) = 2.0;
    const Complex c(0.3, -0.2);
    const RadialJet e = multiply_exponential(j, Eigen::VectorXd::Ones(1), c);
    const Complex ex = std::exp(c * 0.5);
    EXPECT_LT(std::abs(e.value - ex * 0.25), 1e-14);
    EXPECT_LT(std::abs(e.gradient(0) - ex * (c * 0.25 + 1.0)), 1e-14);
    EXPECT_LT(std::abs(e.hessian(0, 0) - ex * (c * c * 0.25 + 2.0 * c + 2.0)), 1e-14);
}

TEST(ProductModel, PartsAddUp)
{
    for (int n : {2, 3}) {
        const auto rs = a_series(n);
        const auto lat = compute_lattice(rs);
        std::mt19937 gen(5 * n);
        for (std::size_t b = 0; b < lat.star(); ++b) {
            const auto d = decompose(rs, lat, b);
            for (int t = 0; t < 4; ++t) {
                RadialJet j = random_jet(rs.dim(), gen);
                const Complex ref = apply_radial(rs, j);
                const Complex got = evaluate_parts(rs, d, j).total();
                EXPECT_LT(std::abs(got - ref), 1e-10 * (1 + std::abs(ref))) << n << " " << b;
            }
        }
        EXPECT_THROW(decompose(rs, lat, lat.star()), DomainError);
    }
}

TEST(ProductModel, WholeSpace)
{
    // S_b = a: nothing vanishes, every positive root is an error term
    const auto rs = a_series(2);
    const auto lat = compute_lattice(rs);
    const auto d = decompose(rs, lat, lat.origin());
    EXPECT_EQ(d.error_terms.size(), rs.positive_count());
    EXPECT_TRUE(d.q_subsystem.isZero());
    EXPECT_TRUE(d.q_tangential.isApprox(to_eigen(rs.space().dual_gram())));
}

TEST(ProductModel, WallErrorTerms)
{
    const auto rs = a_series(2);
    const auto lat = compute_lattice(rs);
    for (std::size_t b = 1; b < lat.star(); ++b) {
        const auto d = decompose(rs, lat, b);
        EXPECT_EQ(d.error_terms.size(), 2u) << b;
        EXPECT_EQ(d.subsystem.roots.size(), 2u);
    }
}

TEST(ProductModel, ErrorBound)
{
    const double bound = error_coefficient_bound(0.5, 20.0);
    EXPECT_LT(bound, 4.2e-9);
    EXPECT_NEAR(bound, 2.0 * std::exp(-20.0) / (1.0 - std::exp(-20.0)), 1e-22);
    EXPECT_THROW(error_coefficient_bound(0.0, 1.0), ParameterError);

    // on the cone the actual coefficients stay below the bound
    const auto rs = a_series(2);
    const auto lat = compute_lattice(rs);
    const auto faces = chamber_faces(rs, lat);
    const auto& wall = *std::find_if(faces.begin(), faces.end(), [](const ChamberFace& f) { return f.zero_simples.size() == 1; });
    const auto d = decompose(rs, lat, wall.b);
    std::mt19937 gen(3);
    std::uniform_real_distribution<double> u(0.0, 30.0);
    const Eigen::MatrixXd g = to_eigen(rs.space().gram());
    for (int t = 0; t < 200; ++t) {
        Eigen::VectorXd a(2);
        a << u(gen), u(gen);
        const double c = cone_constant(rs, d, a);
        if (!(c > 0)) continue;
        const double norm = std::sqrt(a.dot(g * a));
        for (const auto& e : d.error_terms) {
            const double x = to_eigen(e.alpha).dot(a);
            EXPECT_LE(std::cosh(x) / std::sinh(x) - 1.0, error_coefficient_bound(c, norm) * (1 + 1e-9) + 1e-15);
        }
    }
}

namespace {

// D_k = det(Gamma_{<=k}) / det(Gamma_{<k}), from the simple-root Gram matrix.
std::vector<double> ldl_pivots(const std::vector<std::vector<double>>& g)
{
    const std::size_t n = g.size();
    std::vector<double> out;
    double prev = 1.0;
    for (std::size_t k = 1; k <= n; ++k) {
        Eigen::MatrixXd m(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) m(i, j) = g[i][j];
        const double det = m.determinant();
        out.push_back(det / prev);
        prev = det;
    }
    return out;
}

} // namespace

TEST(GammaLdu, Examples)
{
    auto d2 = gamma_ldu(a_series(2));
    EXPECT_EQ(d2.diagonal, (QVector{Rational(2), Rational(3, 2)}));
    auto d3 = gamma_ldu(a_series(3));
    EXPECT_EQ(d3.diagonal, (QVector{Rational(2), Rational(3, 2), Rational(4, 3)}));

    for (int n = 1; n <= 4; ++n) {
        const auto rs = a_series(n);
        const auto g = oracle::a_series_simple_gram(n);
        const auto want = ldl_pivots(g);
        const auto got = gamma_ldu(rs);
        for (std::size_t k = 0; k < want.size(); ++k) EXPECT_NEAR(to_double(got.diagonal[k]), want[k], 1e-12);
        EXPECT_EQ(got.theta * got.gamma * got.theta.transpose(), QMatrix::diagonal(got.diagonal));
        EXPECT_EQ(got.lower * got.theta, QMatrix::identity(static_cast<std::size_t>(n)));
    }
}

TEST(GammaLdu, PermutedOrder)
{
    const auto rs = a_series(3);
    const std::vector<std::size_t> order{1, 0, 2};
    const auto got = gamma_ldu(rs, order);
    auto g = oracle::a_series_simple_gram(3);
    std::vector<std::vector<double>> p(3, std::vector<double>(3));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) p[i][j] = g[order[i]][order[j]];
    const auto want = ldl_pivots(p);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(to_double(got.diagonal[k]), want[k], 1e-12);
    EXPECT_EQ(got.theta * got.gamma * got.theta.transpose(), QMatrix::diagonal(got.diagonal));
    EXPECT_THROW(gamma_ldu(rs, {0, 0, 1}), ParameterError);
    EXPECT_THROW(gamma_ldu(rs, {0, 1}), ParameterError);
}

// The three sign-convention checks.

TEST(ConventionLock, RankOneOperatorForm)
{
    const auto c = lock::rank_one_operator_form();
    EXPECT_LT(c.residual, c.tolerance);
}

TEST(ConventionLock, PlaneWaveEigenvalue)
{
    const auto c = lock::plane_wave_eigenvalue();
    EXPECT_LT(c.residual, c.tolerance);
}

TEST(ConventionLock, TangentialConjugation)
{
    const auto c = lock::tangential_conjugation();
    EXPECT_LT(c.residual, c.tolerance);
}
