#include "radialspec/numerics/tridiagonal.hpp"

#include "radialspec/errors.hpp"

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace radialspec {

using Complex = std::complex<double>;

namespace {

void check_shape(const Tridiagonal& t)
{
    const auto n = t.diag.size();
    if (n == 0) throw ParameterError("empty tridiagonal matrix");
    if (t.lower.size() != n - 1 || t.upper.size() != n - 1) throw ParameterError("tridiagonal bands have wrong sizes");
}

} // namespace

Eigen::MatrixXcd Tridiagonal::dense() const
{
    check_shape(*this);
    const auto n = size();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    m.diagonal() = diag;
    m.diagonal(-1) = lower;
    m.diagonal(1) = upper;
    return m;
}

Eigen::VectorXcd Tridiagonal::multiply(const Eigen::VectorXcd& x) const
{
    check_shape(*this);
    const auto n = size();
    if (x.size() != n) throw ParameterError("vector size does not match the matrix");
    Eigen::VectorXcd y = diag.cwiseProduct(x);
    if (n > 1) {
        y.head(n - 1) += upper.cwiseProduct(x.tail(n - 1));
        y.tail(n - 1) += lower.cwiseProduct(x.head(n - 1));
    }
    return y;
}

bool Tridiagonal::is_symmetric(double tol) const
{
    for (Eigen::Index i = 0; i < lower.size(); ++i)
        if (std::abs(lower(i) - upper(i)) > tol * std::max({1.0, std::abs(lower(i)), std::abs(upper(i))}))
            return false;
    return true;
}

TridiagonalLU::TridiagonalLU(const Tridiagonal& t)
    : dl_(t.lower), d_(t.diag), du_(t.upper), du2_(std::max<Eigen::Index>(t.size() - 2, 1)),
      ipiv_(static_cast<std::size_t>(t.size()))
{
    check_shape(t);
    const auto n = static_cast<lapack_int>(t.size());
    double anorm = 0.0;  // 1-norm: max column sum
    for (Eigen::Index j = 0; j < t.size(); ++j) {
        double s = std::abs(t.diag(j));
        if (j > 0) s += std::abs(t.upper(j - 1));
        if (j + 1 < t.size()) s += std::abs(t.lower(j));
        anorm = std::max(anorm, s);
    }
    if (!std::isfinite(anorm)) throw NumericalError("tridiagonal matrix has non-finite entries");
    lapack_int info = LAPACKE_zgttrf(n, dl_.data(), d_.data(), du_.data(), du2_.data(), ipiv_.data());
    if (info > 0) throw NumericalError("tridiagonal matrix is singular (zero pivot at " + std::to_string(info) + ")");
    if (info < 0) throw InternalError("zgttrf rejected argument " + std::to_string(-info));
    info = LAPACKE_zgtcon('1', n, dl_.data(), d_.data(), du_.data(), du2_.data(), ipiv_.data(), anorm, &rcond_);
    if (info != 0) throw InternalError("zgtcon failed");
}

Eigen::VectorXcd TridiagonalLU::solve_impl(const Eigen::VectorXcd& rhs, char trans) const
{
    if (rhs.size() != d_.size()) throw ParameterError("right-hand side has wrong size");
    Eigen::VectorXcd x = rhs;
    const auto n = static_cast<lapack_int>(d_.size());
    const lapack_int info = LAPACKE_zgttrs(LAPACK_COL_MAJOR, trans, n, 1, dl_.data(), d_.data(), du_.data(),
                                           du2_.data(), ipiv_.data(), x.data(), n);
    if (info != 0) throw InternalError("zgttrs failed");
    return x;
}

Eigen::VectorXcd TridiagonalLU::solve(const Eigen::VectorXcd& rhs) const { return solve_impl(rhs, 'N'); }
Eigen::VectorXcd TridiagonalLU::solve_adjoint(const Eigen::VectorXcd& rhs) const { return solve_impl(rhs, 'C'); }

Eigen::VectorXd symmetric_tridiagonal_eigenvalues(const Eigen::VectorXd& diag, const Eigen::VectorXd& off)
{
    if (diag.size() == 0 || off.size() != diag.size() - 1) throw ParameterError("tridiagonal bands have wrong sizes");
    // dsterf: root-free QL/QR, O(n^2) and no n x n workspace
    Eigen::VectorXd d = diag;
    Eigen::VectorXd e = off;
    const lapack_int info = LAPACKE_dsterf(static_cast<lapack_int>(d.size()), d.data(), e.data());
    if (info != 0) throw NumericalError("symmetric tridiagonal eigensolver did not converge");
    return d;
}

Eigen::VectorXcd complex_symmetric_tridiagonal_eigenvalues(Eigen::VectorXcd d, Eigen::VectorXcd off)
{
    const auto n = d.size();
    if (n == 0 || off.size() != n - 1) throw ParameterError("tridiagonal bands have wrong sizes");
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n);
    e.head(n - 1) = off;
    const double eps = std::numeric_limits<double>::epsilon();

    for (Eigen::Index l = 0; l < n; ++l) {
        int iter = 0;
        double shift_scale = 1.0;
        while (true) {
            Eigen::Index m = l;
            for (; m < n - 1; ++m) {
                const double dd = std::abs(d(m)) + std::abs(d(m + 1));
                if (std::abs(e(m)) <= eps * dd) break;
            }
            if (m == l) break;
            if (++iter > 100) throw NumericalError("complex symmetric QL did not converge");

            const Eigen::VectorXcd d_saved = d.segment(l, m - l + 1);
            const Eigen::VectorXcd e_saved = e.segment(l, m - l + 1);

            Complex g = (d(l + 1) - d(l)) / (2.0 * e(l));
            Complex r = std::sqrt(g * g + 1.0);
            g = d(m) - d(l) + shift_scale * e(l) / (std::abs(g + r) >= std::abs(g - r) ? g + r : g - r);
            Complex s = 1.0, c = 1.0, p = 0.0;
            bool deflated = false;
            bool breakdown = false;
            for (Eigen::Index i = m - 1; i >= l; --i) {
                const Complex f = s * e(i);
                const Complex b = c * e(i);
                r = std::sqrt(f * f + g * g);
                e(i + 1) = r;
                const double scale = std::abs(f) + std::abs(g);
                if (scale == 0.0) {
                    d(i + 1) -= p;
                    e(m) = 0.0;
                    deflated = true;
                    break;
                }
                if (std::abs(r) < 1e-10 * scale) {  // isotropic pair: the rotation does not exist
                    breakdown = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d(i + 1) - p;
                r = (d(i) - g) * s + 2.0 * c * b;
                p = s * r;
                d(i + 1) = g + p;
                g = c * r - b;
            }
            if (breakdown) {
                // undo the sweep and retry with a perturbed shift
                d.segment(l, m - l + 1) = d_saved;
                e.segment(l, m - l + 1) = e_saved;
                shift_scale *= 1.0 + 1e-3 * iter;
                continue;
            }
            if (deflated) continue;
            d(l) -= p;
            e(l) = g;
            e(m) = 0.0;
        }
    }
    for (Eigen::Index i = 0; i < n; ++i)
        if (!std::isfinite(d(i).real()) || !std::isfinite(d(i).imag()))
            throw NumericalError("complex symmetric QL produced non-finite eigenvalues");
    std::vector<Complex> v(d.data(), d.data() + n);
    std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return Eigen::Map<Eigen::VectorXcd>(v.data(), n);
}

double inverse_norm2(const Tridiagonal& t, int max_iter, double rel_tol)
{
    // Lanczos with full reorthogonalisation on M = T^{-1} T^{-H}. Power
    // iteration stalls when the bottom singular values cluster, which is the
    // normal situation for a discretized continuum.
    const TridiagonalLU lu(t);
    const Eigen::Index n = t.size();
    const Eigen::Index steps = std::min<Eigen::Index>(n, std::max(1, max_iter));
    std::mt19937 gen(20240607);
    std::normal_distribution<double> nd;
    Eigen::MatrixXcd Q(n, steps);
    Eigen::VectorXd alpha(steps), beta(steps);
    Eigen::VectorXcd q(n);
    for (Eigen::Index i = 0; i < n; ++i) q(i) = Complex(nd(gen), nd(gen));
    q.normalize();
    double prev = 0.0;
    for (Eigen::Index k = 0; k < steps; ++k) {
        Q.col(k) = q;
        Eigen::VectorXcd w = lu.solve(lu.solve_adjoint(q));
        if (!w.allFinite()) throw NumericalError("Lanczos iteration broke down");
        alpha(k) = std::real(q.dot(w));
        for (int pass = 0; pass < 2; ++pass) w -= Q.leftCols(k + 1) * (Q.leftCols(k + 1).adjoint() * w);
        beta(k) = w.norm();

        const Eigen::Index m = k + 1;
        const bool last = m == steps || beta(k) <= std::numeric_limits<double>::epsilon() * std::abs(alpha(0));
        if (m % 8 != 0 && !last) {
            q = w / beta(k);
            continue;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
        es.computeFromTridiagonal(alpha.head(m), beta.head(m - 1).eval(), Eigen::ComputeEigenvectors);
        const double top = es.eigenvalues()(m - 1);
        const double residual = std::abs(beta(k) * es.eigenvectors()(m - 1, m - 1));
        if (!(top > 0)) throw NumericalError("Lanczos iteration broke down");
        if (last ||
            (residual <= rel_tol * top && std::abs(top - prev) <= rel_tol * top))
            return std::sqrt(top);
        prev = top;
        q = w / beta(k);
    }
    return std::sqrt(prev);
}

} // namespace radialspec
