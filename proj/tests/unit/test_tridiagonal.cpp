#include "radialspec/errors.hpp"
#include "radialspec/numerics/tridiagonal.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace radialspec;
using Complex = std::complex<double>;

namespace {

Tridiagonal random_tridiagonal(Eigen::Index n, unsigned seed, bool symmetric)
{
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto c = [&] { return Complex(u(gen), u(gen)); };
    Tridiagonal t;
    t.diag = Eigen::VectorXcd::NullaryExpr(n, c);
    t.diag.array() += 4.0;
    t.lower = Eigen::VectorXcd::NullaryExpr(n - 1, c);
    t.upper = symmetric ? t.lower : Eigen::VectorXcd::NullaryExpr(n - 1, c);
    return t;
}

std::vector<Complex> sorted(const Eigen::VectorXcd& v)
{
    std::vector<Complex> out(v.data(), v.data() + v.size());
    std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return out;
}

// max over a of min over b of |a - b|, both ways
double set_distance(const std::vector<Complex>& a, const std::vector<Complex>& b)
{
    double worst = 0;
    for (int pass = 0; pass < 2; ++pass) {
        const auto& x = pass ? b : a;
        const auto& y = pass ? a : b;
        for (auto p : x) {
            double best = 1e300;
            for (auto q : y) best = std::min(best, std::abs(p - q));
            worst = std::max(worst, best);
        }
    }
    return worst;
}

} // namespace

TEST(Tridiagonal, DenseAndMultiply)
{
    const auto t = random_tridiagonal(7, 1, false);
    const Eigen::MatrixXcd d = t.dense();
    const Eigen::VectorXcd x = Eigen::VectorXcd::LinSpaced(7, 1.0, 7.0);
    EXPECT_LT((t.multiply(x) - d * x).norm(), 1e-13);
    EXPECT_FALSE(t.is_symmetric());
    EXPECT_TRUE(random_tridiagonal(7, 1, true).is_symmetric());
}

TEST(Tridiagonal, Solve)
{
    for (Eigen::Index n : {1, 2, 5, 40}) {
        const auto t = random_tridiagonal(n, 3 + static_cast<unsigned>(n), false);
        const Eigen::MatrixXcd d = t.dense();
        const Eigen::VectorXcd b = Eigen::VectorXcd::LinSpaced(n, -1.0, 2.0) * Complex(1.0, 0.5);
        const TridiagonalLU lu(t);
        EXPECT_LT((d * lu.solve(b) - b).norm(), 1e-12 * b.norm()) << n;
        EXPECT_LT((d.adjoint() * lu.solve_adjoint(b) - b).norm(), 1e-12 * b.norm()) << n;
        EXPECT_GT(lu.rcond(), 0.0);
        EXPECT_LE(lu.rcond(), 1.0 + 1e-12);
    }
}

TEST(Tridiagonal, ConditionEstimate)
{
    Tridiagonal id{Eigen::VectorXcd::Zero(3), Eigen::VectorXcd::Ones(4), Eigen::VectorXcd::Zero(3)};
    EXPECT_DOUBLE_EQ(TridiagonalLU(id).rcond(), 1.0);
    id.diag(2) = 1e-14;
    EXPECT_LT(TridiagonalLU(id).rcond(), 1e-13);
    id.diag(2) = 0.0;
    EXPECT_THROW(TridiagonalLU{id}, NumericalError);
    Tridiagonal bad{Eigen::VectorXcd::Zero(2), Eigen::VectorXcd::Ones(4), Eigen::VectorXcd::Zero(3)};
    EXPECT_THROW(TridiagonalLU{bad}, ParameterError);
}

TEST(Tridiagonal, RealSymmetricEigenvalues)
{
    std::mt19937 gen(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const Eigen::VectorXd d = Eigen::VectorXd::NullaryExpr(30, [&] { return u(gen); });
    const Eigen::VectorXd e = Eigen::VectorXd::NullaryExpr(29, [&] { return u(gen); });
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(30, 30);
    m.diagonal() = d;
    m.diagonal(1) = e;
    m.diagonal(-1) = e;
    const Eigen::VectorXd want = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues();
    EXPECT_LT((symmetric_tridiagonal_eigenvalues(d, e) - want).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Tridiagonal, ComplexSymmetricEigenvalues)
{
    for (Eigen::Index n : {1, 2, 3, 10, 60, 200}) {
        const auto t = random_tridiagonal(n, 7 + static_cast<unsigned>(n), true);
        const auto got = sorted(complex_symmetric_tridiagonal_eigenvalues(t.diag, t.lower));
        const auto want = sorted(Eigen::ComplexEigenSolver<Eigen::MatrixXcd>(t.dense(), false).eigenvalues());
        EXPECT_LT(set_distance(got, want), 1e-10) << n;
        // trace is preserved
        Complex tr = 0.0, sum = 0.0;
        for (auto v : got) sum += v;
        tr = t.diag.sum();
        EXPECT_LT(std::abs(tr - sum), 1e-10 * static_cast<double>(n)) << n;
    }
}

TEST(Tridiagonal, ComplexSymmetricWideSpread)
{
    // a scaled second-difference matrix: eigenvalues (2 - 2 cos(k pi/(n+1))) e^{-i phi} / h^2
    const Eigen::Index n = 300;
    const double h = 0.01;
    const Complex w = std::polar(1.0, -0.8);
    const Eigen::VectorXcd d = Eigen::VectorXcd::Constant(n, 2.0 * w / (h * h));
    const Eigen::VectorXcd e = Eigen::VectorXcd::Constant(n - 1, -1.0 * w / (h * h));
    const auto got = complex_symmetric_tridiagonal_eigenvalues(d, e);
    std::vector<Complex> want;
    for (Eigen::Index k = 1; k <= n; ++k)
        want.push_back((2.0 - 2.0 * std::cos(static_cast<double>(k) * M_PI / static_cast<double>(n + 1))) * w / (h * h));
    EXPECT_LT(set_distance(sorted(got), want), 1e-8 * 4.0 / (h * h));
}

TEST(Tridiagonal, InverseNorm)
{
    const auto t = random_tridiagonal(25, 9, false);
    const Eigen::MatrixXcd inv = t.dense().inverse();
    const double want = Eigen::JacobiSVD<Eigen::MatrixXcd>(inv).singularValues()(0);
    EXPECT_NEAR(inverse_norm2(t), want, 1e-8 * want);
}
