#include "radialspec/numerics/kron_resolvent.hpp"

#include "radialspec/errors.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace radialspec {

namespace {

constexpr Complex two_pi_i(0.0, 2 * std::numbers::pi);

double segment_distance(Complex p, Complex a, Complex b)
{
    const Complex d = b - a;
    const double len2 = std::norm(d);
    double t = len2 == 0 ? 0.0 : (std::conj(d) * (p - a)).real() / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

// Golub-Welsch nodes and weights on [-1, 1]
void gauss_legendre(std::size_t n, std::vector<double>& x, std::vector<double>& w)
{
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    Eigen::VectorXd off(static_cast<Eigen::Index>(n) - 1);
    for (Eigen::Index k = 1; k < static_cast<Eigen::Index>(n); ++k)
        off(k - 1) = static_cast<double>(k) / std::sqrt(4.0 * static_cast<double>(k * k) - 1.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
    x.resize(n);
    w.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = es.eigenvalues()(static_cast<Eigen::Index>(i));
        const double v = es.eigenvectors()(0, static_cast<Eigen::Index>(i));
        w[i] = 2.0 * v * v;
    }
}

std::vector<Complex> eigenvalues_of(const Eigen::MatrixXcd& m)
{
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
    if (es.info() != Eigen::Success) throw NumericalError("eigensolver did not converge");
    const auto& v = es.eigenvalues();
    return {v.data(), v.data() + v.size()};
}

void check_square(const Eigen::MatrixXcd& m, const char* name)
{
    if (m.rows() == 0 || m.rows() != m.cols()) throw ParameterError(std::string(name) + " must be a non-empty square matrix");
}

} // namespace

double Contour::distance_to(Complex p) const
{
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < vertices.size(); ++i)
        d = std::min(d, segment_distance(p, vertices[i], vertices[(i + 1) % vertices.size()]));
    return d;
}

int Contour::winding(Complex p) const
{
    double total = 0.0;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        total += std::arg((vertices[(i + 1) % vertices.size()] - p) / (vertices[i] - p));
    return static_cast<int>(std::lround(total / (2 * std::numbers::pi)));
}

Contour circle_contour(Complex center, double radius, std::size_t nodes)
{
    if (!(radius > 0) || nodes < 3) throw ParameterError("circle contour needs radius > 0 and at least 3 nodes");
    Contour c;
    for (std::size_t k = 0; k < nodes; ++k) {
        const double t = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(nodes);
        const Complex e = std::polar(1.0, t);
        c.nodes.push_back(center + radius * e);
        c.weights.push_back(Complex(0.0, 1.0) * radius * e * (2 * std::numbers::pi / static_cast<double>(nodes)));
    }
    c.vertices = c.nodes;
    return c;
}

Contour rectangle_contour(Complex lower_left, Complex upper_right, std::size_t nodes)
{
    if (nodes < 4 || nodes % 4 != 0) throw ParameterError("rectangle contour needs a multiple of 4 nodes");
    if (!(upper_right.real() > lower_left.real()) || !(upper_right.imag() > lower_left.imag()))
        throw ParameterError("rectangle corners are not ordered");
    Contour c;
    c.vertices = {lower_left, Complex(upper_right.real(), lower_left.imag()), upper_right,
                  Complex(lower_left.real(), upper_right.imag())};
    std::vector<double> x, w;
    gauss_legendre(nodes / 4, x, w);
    for (std::size_t s = 0; s < 4; ++s) {
        const Complex a = c.vertices[s], b = c.vertices[(s + 1) % 4];
        for (std::size_t i = 0; i < x.size(); ++i) {
            c.nodes.push_back(a + (b - a) * (1.0 + x[i]) / 2.0);
            c.weights.push_back((b - a) / 2.0 * w[i]);
        }
    }
    return c;
}

Contour separating_rectangle(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B, Complex lambda, std::size_t nodes)
{
    check_square(A, "A");
    check_square(B, "B");
    const auto ea = eigenvalues_of(A);
    auto inner = eigenvalues_of(B);
    for (auto& b : inner) b = lambda - b;
    double gap = std::numeric_limits<double>::infinity();
    for (auto a : ea)
        for (auto p : inner) gap = std::min(gap, std::abs(a - p));
    if (!(gap > 0)) throw DomainError("lambda lies in spec(A) + spec(B)");
    double x0 = inner[0].real(), x1 = x0, y0 = inner[0].imag(), y1 = y0;
    for (auto p : inner) {
        x0 = std::min(x0, p.real());
        x1 = std::max(x1, p.real());
        y0 = std::min(y0, p.imag());
        y1 = std::max(y1, p.imag());
    }
    const double pad = gap / 2;
    Contour c = rectangle_contour(Complex(x0 - pad, y0 - pad), Complex(x1 + pad, y1 + pad), nodes);
    for (auto a : ea)
        if (c.winding(a) != 0 || c.distance_to(a) < pad / 4)
            throw DomainError("no separating rectangle: an eigenvalue of A lies inside the box around lambda - spec(B)");
    return c;
}

Eigen::MatrixXcd kronecker_sum(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B)
{
    const Eigen::MatrixXcd ia = Eigen::MatrixXcd::Identity(A.rows(), A.rows());
    const Eigen::MatrixXcd ib = Eigen::MatrixXcd::Identity(B.rows(), B.rows());
    return Eigen::kroneckerProduct(A, ib).eval() + Eigen::kroneckerProduct(ia, B).eval();
}

KronResolventResult contour_kron_resolvent(const MatrixModel& model, Complex lambda)
{
    const auto& A = model.A;
    const auto& B = model.B;
    check_square(A, "A");
    check_square(B, "B");
    const auto& c = model.contour;
    if (c.nodes.empty() || c.nodes.size() != c.weights.size() || c.vertices.size() < 3)
        throw ParameterError("contour is empty or malformed");

    KronResolventResult res;
    res.separation = std::numeric_limits<double>::infinity();
    const double scale = std::max({1.0, A.cwiseAbs().maxCoeff(), B.cwiseAbs().maxCoeff(), std::abs(lambda)});
    for (auto a : eigenvalues_of(A)) {
        res.separation = std::min(res.separation, c.distance_to(a));
        if (c.winding(a) != 0) throw DomainError("contour encloses an eigenvalue of A");
    }
    for (auto b : eigenvalues_of(B)) {
        res.separation = std::min(res.separation, c.distance_to(lambda - b));
        if (c.winding(lambda - b) != 1) throw DomainError("contour does not enclose lambda - spec(B) once");
    }
    if (!(res.separation > 1e-12 * scale)) throw DomainError("contour touches a spectrum");

    const auto na = A.rows(), nb = B.rows();
    const Eigen::MatrixXcd ia = Eigen::MatrixXcd::Identity(na, na);
    const Eigen::MatrixXcd ib = Eigen::MatrixXcd::Identity(nb, nb);
    res.integral = Eigen::MatrixXcd::Zero(na * nb, na * nb);
    for (std::size_t k = 0; k < c.nodes.size(); ++k) {
        const Complex mu = c.nodes[k];
        const Eigen::MatrixXcd ra = (A - mu * ia).partialPivLu().inverse();
        const Eigen::MatrixXcd rb = (B - (lambda - mu) * ib).partialPivLu().inverse();
        res.integral += c.weights[k] * Eigen::kroneckerProduct(ra, rb).eval();
    }
    res.integral /= two_pi_i;

    const Eigen::MatrixXcd s = kronecker_sum(A, B) - lambda * Eigen::MatrixXcd::Identity(na * nb, na * nb);
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(s);
    if (!lu.isInvertible()) throw DomainError("lambda lies in spec(A) + spec(B)");
    res.direct = lu.inverse();
    res.relative_error = (res.integral - res.direct).norm() / res.direct.norm();
    return res;
}

double hausdorff_distance(const std::vector<Complex>& a, const std::vector<Complex>& b)
{
    if (a.empty() || b.empty()) throw ParameterError("Hausdorff distance of an empty set");
    auto one_sided = [](const std::vector<Complex>& x, const std::vector<Complex>& y) {
        double worst = 0.0;
        for (auto p : x) {
            double best = std::numeric_limits<double>::infinity();
            for (auto q : y) best = std::min(best, std::abs(p - q));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(one_sided(a, b), one_sided(b, a));
}

SpectrumSumReport spectrum_sum_check(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B)
{
    check_square(A, "A");
    check_square(B, "B");
    SpectrumSumReport rep;
    rep.kron_eigenvalues = eigenvalues_of(kronecker_sum(A, B));
    for (auto a : eigenvalues_of(A))
        for (auto b : eigenvalues_of(B)) rep.sums.push_back(a + b);
    auto by_parts = [](Complex x, Complex y) { return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag(); };
    std::sort(rep.kron_eigenvalues.begin(), rep.kron_eigenvalues.end(), by_parts);
    std::sort(rep.sums.begin(), rep.sums.end(), by_parts);
    rep.hausdorff = hausdorff_distance(rep.kron_eigenvalues, rep.sums);
    rep.scale = std::max(A.cwiseAbs().maxCoeff(), B.cwiseAbs().maxCoeff());
    return rep;
}

RandomPair random_pair(std::size_t dim, std::uint64_t seed)
{
    if (dim == 0) throw ParameterError("dimension must be >= 1");
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> nd(0.0, std::sqrt(0.5 / static_cast<double>(dim)));
    const auto n = static_cast<Eigen::Index>(dim);
    RandomPair p;
    p.A = Eigen::MatrixXcd::NullaryExpr(n, n, [&] { return Complex(nd(gen), nd(gen)); });
    p.B = Eigen::MatrixXcd::NullaryExpr(n, n, [&] { return Complex(nd(gen), nd(gen)); });
    p.lambda = 6.0;
    return p;
}

} // namespace radialspec
