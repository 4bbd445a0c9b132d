#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace radialspec {

/// Complex tridiagonal matrix stored by its three diagonals.
struct Tridiagonal {
    Eigen::VectorXcd lower;  ///< size n - 1
    Eigen::VectorXcd diag;   ///< size n
    Eigen::VectorXcd upper;  ///< size n - 1

    Eigen::Index size() const noexcept { return diag.size(); }
    Eigen::MatrixXcd dense() const;
    Eigen::VectorXcd multiply(const Eigen::VectorXcd& x) const;
    bool is_symmetric(double tol = 0.0) const;
};

/// LU factorisation with partial pivoting (LAPACK zgttrf). NumericalError when
/// the matrix is exactly singular.
class TridiagonalLU {
public:
    explicit TridiagonalLU(const Tridiagonal& t);

    Eigen::VectorXcd solve(const Eigen::VectorXcd& rhs) const;
    /// Solves with the conjugate transpose.
    Eigen::VectorXcd solve_adjoint(const Eigen::VectorXcd& rhs) const;
    /// Reciprocal 1-norm condition estimate (zgtcon).
    double rcond() const noexcept { return rcond_; }

private:
    Eigen::VectorXcd dl_, d_, du_, du2_;
    std::vector<int> ipiv_;
    double rcond_ = 0.0;

    Eigen::VectorXcd solve_impl(const Eigen::VectorXcd& rhs, char trans) const;
};

/// Eigenvalues of a real symmetric tridiagonal matrix, ascending.
Eigen::VectorXd symmetric_tridiagonal_eigenvalues(const Eigen::VectorXd& diag, const Eigen::VectorXd& off);

/// Eigenvalues of a complex symmetric (not Hermitian) tridiagonal matrix by
/// implicit QL with complex orthogonal rotations. Sorted by real part, then
/// imaginary part. NumericalError when an eigenvalue fails to converge.
Eigen::VectorXcd complex_symmetric_tridiagonal_eigenvalues(Eigen::VectorXcd diag, Eigen::VectorXcd off);

/// Largest singular value of T^{-1} by Lanczos on T^{-1} T^{-H}; at most
/// max_iter steps.
double inverse_norm2(const Tridiagonal& t, int max_iter = 500, double rel_tol = 1e-10);

} // namespace radialspec
