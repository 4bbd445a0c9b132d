#include "radialspec/errors.hpp"
#include "radialspec/numerics/kron_resolvent.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

using namespace radialspec;

namespace {

Eigen::MatrixXcd scalar(Complex a)
{
    return Eigen::MatrixXcd::Constant(1, 1, a);
}

} // namespace

TEST(Contour, CircleQuadrature)
{
    const auto c = circle_contour(Complex(1.0, 2.0), 0.5, 64);
    EXPECT_EQ(c.nodes.size(), 64u);
    EXPECT_EQ(c.winding(Complex(1.0, 2.0)), 1);
    EXPECT_EQ(c.winding(Complex(3.0, 2.0)), 0);
    // Cauchy: (2 pi i)^{-1} int dz / (z - p) = 1 inside
    Complex s = 0.0;
    for (std::size_t k = 0; k < c.nodes.size(); ++k) s += c.weights[k] / (c.nodes[k] - Complex(1.1, 2.1));
    EXPECT_LT(std::abs(s / Complex(0.0, 2 * std::numbers::pi) - 1.0), 1e-12);
    EXPECT_NEAR(c.distance_to(Complex(1.0, 2.0)), 0.5, 1e-3);
}

TEST(Contour, RectangleQuadrature)
{
    const auto c = rectangle_contour(Complex(-1.0, -1.0), Complex(2.0, 1.0), 128);
    EXPECT_EQ(c.winding(0.0), 1);
    EXPECT_EQ(c.winding(3.0), 0);
    EXPECT_DOUBLE_EQ(c.distance_to(0.0), 1.0);
    Complex s = 0.0, len = 0.0;
    for (std::size_t k = 0; k < c.nodes.size(); ++k) {
        s += c.weights[k] / (c.nodes[k] - Complex(0.3, 0.2));
        len += std::abs(c.weights[k]);
    }
    EXPECT_LT(std::abs(s / Complex(0.0, 2 * std::numbers::pi) - 1.0), 1e-10);
    EXPECT_NEAR(len.real(), 10.0, 1e-12);
    EXPECT_THROW(rectangle_contour(0.0, Complex(1.0, 1.0), 30), ParameterError);
}

TEST(KronResolvent, ScalarExample)
{
    // a = 1, b = 2, lambda = 5: (1 + 2 - 5)^{-1} = -1/2
    MatrixModel m{scalar(1.0), scalar(2.0), circle_contour(3.0, 1.0, 64)};
    const auto r = contour_kron_resolvent(m, 5.0);
    EXPECT_LT(std::abs(r.integral(0, 0) + 0.5), 1e-12);
    EXPECT_LT(std::abs(r.direct(0, 0) + 0.5), 1e-15);
    EXPECT_LT(r.relative_error, 1e-12);
}

TEST(KronResolvent, DiagonalClosedForm)
{
    Eigen::MatrixXcd A = Eigen::VectorXcd::LinSpaced(3, 0.0, 1.0).asDiagonal();
    Eigen::MatrixXcd B = Eigen::Vector2cd(Complex(0.0, 0.5), Complex(0.3, -0.2)).asDiagonal();
    const Complex lambda(6.0, 0.1);
    MatrixModel m{A, B, separating_rectangle(A, B, lambda, 256)};
    const auto r = contour_kron_resolvent(m, lambda);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 2; ++j) {
            const Complex expected = 1.0 / (A(i, i) + B(j, j) - lambda);
            EXPECT_LT(std::abs(r.integral(2 * i + j, 2 * i + j) - expected), 1e-10);
        }
    EXPECT_LT(r.relative_error, 1e-10);
}

TEST(KronResolvent, RandomPairs)
{
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto p = random_pair(4, seed);
        MatrixModel m{p.A, p.B, separating_rectangle(p.A, p.B, p.lambda, 256)};
        const auto r = contour_kron_resolvent(m, p.lambda);
        EXPECT_LE(r.relative_error, 1e-6) << seed;
        EXPECT_GT(r.separation, 0.0);
    }
}

TEST(KronResolvent, ErrorShrinksWithNodes)
{
    const auto p = random_pair(4, 7);
    double prev = 1.0;
    for (std::size_t n : {16u, 32u, 64u}) {
        MatrixModel m{p.A, p.B, separating_rectangle(p.A, p.B, p.lambda, n)};
        const double e = contour_kron_resolvent(m, p.lambda).relative_error;
        EXPECT_LT(e, prev) << n;
        prev = e;
    }
}

TEST(KronResolvent, RejectsBadContours)
{
    const Eigen::MatrixXcd A = scalar(1.0), B = scalar(2.0);
    // contains spec(A)
    EXPECT_THROW(contour_kron_resolvent({A, B, circle_contour(2.0, 1.5, 64)}, 5.0), DomainError);
    // misses lambda - spec(B)
    EXPECT_THROW(contour_kron_resolvent({A, B, circle_contour(10.0, 1.0, 64)}, 5.0), DomainError);
    // passes through lambda - spec(B)
    EXPECT_THROW(contour_kron_resolvent({A, B, circle_contour(3.5, 0.5, 64)}, 5.0), DomainError);
    // lambda in spec(A) + spec(B)
    EXPECT_THROW(contour_kron_resolvent({A, B, circle_contour(0.0, 0.5, 64)}, 3.0), DomainError);
    // spec(A) too close to lambda - spec(B) for a separating box
    EXPECT_THROW(separating_rectangle(A, B, 3.0, 64), DomainError);
}

TEST(KronResolvent, KroneckerSum)
{
    Eigen::MatrixXcd A(2, 2), B(2, 2);
    A << 1.0, 2.0, 3.0, 4.0;
    B << 0.0, 1.0, Complex(0.0, 1.0), 0.0;
    const auto k = kronecker_sum(A, B);
    ASSERT_EQ(k.rows(), 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int p = 0; p < 2; ++p)
                for (int q = 0; q < 2; ++q) {
                    const Complex e = A(i, p) * (j == q ? 1.0 : 0.0) + (i == p ? 1.0 : 0.0) * B(j, q);
                    EXPECT_EQ(k(2 * i + j, 2 * p + q), e);
                }
}

TEST(SpectrumSum, ScalarIsExact)
{
    const auto r = spectrum_sum_check(scalar(Complex(1.0, 1.0)), scalar(Complex(2.0, -3.0)));
    ASSERT_EQ(r.sums.size(), 1u);
    EXPECT_EQ(r.sums[0], Complex(3.0, -2.0));
    EXPECT_EQ(r.hausdorff, 0.0);
}

TEST(SpectrumSum, RandomMatrices)
{
    const auto p = random_pair(5, 11);
    const auto r = spectrum_sum_check(p.A, p.B);
    EXPECT_EQ(r.sums.size(), 25u);
    EXPECT_EQ(r.kron_eigenvalues.size(), 25u);
    EXPECT_LE(r.hausdorff, 1e-9 * std::max(1.0, r.scale));
}

TEST(SpectrumSum, JordanBlock)
{
    // a defective A: eigenvalues are still additive, up to the usual
    // sensitivity of a nilpotent perturbation
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(2, 2);
    A << 1.0, 1.0, 0.0, 1.0;
    Eigen::MatrixXcd B = Eigen::Vector2cd(0.0, Complex(0.0, 2.0)).asDiagonal();
    const auto r = spectrum_sum_check(A, B);
    EXPECT_LE(r.hausdorff, 1e-6);
}

TEST(SpectrumSum, Hausdorff)
{
    EXPECT_EQ(hausdorff_distance({0.0, 1.0}, {0.0, 1.0}), 0.0);
    EXPECT_DOUBLE_EQ(hausdorff_distance({0.0}, {0.0, 3.0}), 3.0);
    EXPECT_DOUBLE_EQ(hausdorff_distance({0.0, 1.0}, {Complex(0.0, 1.0)}), std::sqrt(2.0));
}

TEST(RandomPair, Reproducible)
{
    const auto a = random_pair(4, 42), b = random_pair(4, 42), c = random_pair(4, 43);
    EXPECT_EQ(a.A, b.A);
    EXPECT_EQ(a.B, b.B);
    EXPECT_NE(a.A, c.A);
    EXPECT_EQ(a.lambda, Complex(6.0));
}
