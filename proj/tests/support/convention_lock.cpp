#include "convention_lock.hpp"

#include "radialspec/radial_operator.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace radialspec;

namespace lock {

namespace {

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

Check rank_one_operator_form()
{
    double worst = 0.0;
    for (int m : {1, 2, 3}) {
        const auto rs = rank_one(m);
        for (double r : {0.3, 1.0, 2.7}) {
            RadialJet j = RadialJet::constant(Eigen::VectorXd::Constant(1, r), std::cos(1.3 * r));
            j.gradient(0) = -1.3 * std::sin(1.3 * r);
            j.hessian(0, 0) = -1.69 * std::cos(1.3 * r);
            const Complex want = 1.69 * std::cos(1.3 * r) + m * std::cosh(r) / std::sinh(r) * 1.3 * std::sin(1.3 * r);
            worst = std::max(worst, std::abs(apply_radial(rs, j) - want));
        }
        const double xi = 0.7;
        const Complex s(-m / 2.0, xi);
        RadialJet j = RadialJet::constant(Eigen::VectorXd::Constant(1, 30.0), 1.0);
        j = multiply_exponential(j, Eigen::VectorXd::Ones(1), s);
        worst = std::max(worst, std::abs(apply_radial(rs, j) / j.value - (m * m / 4.0 + xi * xi)));
    }
    return {"rank-one operator form", worst, 1e-10};
}

Check plane_wave_eigenvalue()
{
    double worst = 0.0;
    std::mt19937 gen(9);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int n = 1; n <= 3; ++n) {
        const auto rs = a_series(n);
        for (int t = 0; t < 10; ++t) {
            const Eigen::VectorXd beta = Eigen::VectorXd::NullaryExpr(n, [&] { return u(gen); });
            const Eigen::VectorXd a = Eigen::VectorXd::NullaryExpr(n, [&] { return u(gen); });
            worst = std::max(worst, std::abs(plane_wave_residual(rs, beta, a)));
        }
    }
    // by hand: rank one, m = 2 (rho = 1), beta = 1/2, so lambda = 1 - 1/4
    const auto rs = rank_one(2);
    RadialJet j = RadialJet::constant(Eigen::VectorXd::Constant(1, 0.4), 1.0);
    j = multiply_exponential(j, Eigen::VectorXd::Ones(1), 0.5);
    const RadialJet v = multiply_exponential(j, Eigen::VectorXd::Ones(1), -1.0);
    const Complex op = std::exp(0.4) * flat_laplacian(rs, v) + 1.0 * j.value;
    worst = std::max(worst, std::abs(op - 0.75 * j.value));
    return {"plane-wave eigenvalue", worst, 1e-12};
}

Check tangential_conjugation()
{
    double worst = 0.0;
    for (int n : {2, 3}) {
        const auto rs = a_series(n);
        const auto lat = compute_lattice(rs);
        std::mt19937 gen(17 + n);
        for (const auto& face : chamber_faces(rs, lat)) {
            if (face.b == lat.star()) continue;
            const auto d = decompose(rs, lat, face.b);
            const Eigen::VectorXd rt = to_eigen(d.subsystem.rho_diff);
            for (Complex theta : {Complex(0.0), Complex(0.3, 0.5), Complex(-0.2, -1.1)}) {
                const Complex w = std::exp(theta);
                const RadialJet f = random_jet(rs.dim(), gen);
                const Complex phase = (w - 1.0) * rt.dot(f.point);
                const Complex lhs =
                    std::exp(phase) * tangential_scaled(d, multiply_exponential(f, rt, -(w - 1.0)), theta);
                const Complex rhs =
                    std::exp(-rt.dot(f.point)) * tangential_conjugated(d, multiply_exponential(f, rt, 1.0), theta);
                worst = std::max(worst, std::abs(lhs - rhs) / (1 + std::abs(rhs)));
            }
        }
    }
    return {"tangential conjugation", worst, 1e-11};
}

} // namespace lock
