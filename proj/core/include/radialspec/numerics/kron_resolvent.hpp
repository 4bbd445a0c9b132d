#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <vector>

namespace radialspec {

using Complex = std::complex<double>;

/// Closed polyline with quadrature: the integral of f over the contour is
/// approximately sum weights[k] f(nodes[k]). `vertices` describe the curve
/// (counter-clockwise) for winding and distance checks.
struct Contour {
    std::vector<Complex> nodes;
    std::vector<Complex> weights;
    std::vector<Complex> vertices;

    double distance_to(Complex p) const;
    /// Winding number of the polyline around p.
    int winding(Complex p) const;
};

/// Trapezoid rule on a circle (spectrally accurate for analytic integrands).
Contour circle_contour(Complex center, double radius, std::size_t nodes);
/// Gauss-Legendre on each side of the rectangle; `nodes` is split evenly
/// over the four sides and must be a multiple of 4.
Contour rectangle_contour(Complex lower_left, Complex upper_right, std::size_t nodes);

/// A, B and a contour that must enclose lambda - spec(B) and exclude spec(A).
struct MatrixModel {
    Eigen::MatrixXcd A;
    Eigen::MatrixXcd B;
    Contour contour;
};

/// Rectangle around lambda - spec(B), padded by half the distance to spec(A).
/// DomainError when the padded box would contain an eigenvalue of A.
Contour separating_rectangle(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B, Complex lambda, std::size_t nodes);

/// A (x) I + I (x) B.
Eigen::MatrixXcd kronecker_sum(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B);

struct KronResolventResult {
    Eigen::MatrixXcd integral;  ///< (2 pi i)^{-1} sum w (A - mu)^{-1} (x) (B - (lambda - mu))^{-1}
    Eigen::MatrixXcd direct;    ///< (A (+) B - lambda)^{-1}
    double relative_error = 0.0;  ///< Frobenius, relative to `direct`
    double separation = 0.0;      ///< min distance from the contour to both spectra
};

/// DomainError when the contour touches either spectrum or fails to separate
/// them, or when lambda is in spec(A) + spec(B).
KronResolventResult contour_kron_resolvent(const MatrixModel& model, Complex lambda);

struct SpectrumSumReport {
    std::vector<Complex> kron_eigenvalues;
    std::vector<Complex> sums;  ///< a + b over all pairs
    double hausdorff = 0.0;
    double scale = 0.0;         ///< max |entry| of A and B
};

SpectrumSumReport spectrum_sum_check(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B);

/// Symmetric Hausdorff distance between two finite point sets.
double hausdorff_distance(const std::vector<Complex>& a, const std::vector<Complex>& b);

/// Reproducible dim x dim complex Gaussian matrices with entries of variance
/// 1/dim, so both spectra sit roughly in the unit disk; lambda = 6 keeps
/// lambda - spec(B) well away from spec(A).
struct RandomPair {
    Eigen::MatrixXcd A;
    Eigen::MatrixXcd B;
    Complex lambda;
};
RandomPair random_pair(std::size_t dim, std::uint64_t seed);

} // namespace radialspec
