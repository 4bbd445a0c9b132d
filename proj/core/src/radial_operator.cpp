#include "radialspec/radial_operator.hpp"

#include "radialspec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace radialspec {

RadialJet RadialJet::constant(Eigen::VectorXd point, Complex value)
{
    const auto n = point.size();
    RadialJet j;
    j.point = std::move(point);
    j.value = value;
    j.gradient = Eigen::VectorXcd::Zero(n);
    j.hessian = Eigen::MatrixXcd::Zero(n, n);
    return j;
}

ScalingParameter::ScalingParameter(Complex theta) : theta_(theta), w_(std::exp(theta))
{
    if (!(std::abs(theta.imag()) < std::numbers::pi / 2) || !std::isfinite(theta.real()))
        throw DomainError("scaling parameter needs |Im theta| < pi/2");
}

Eigen::VectorXd to_eigen(const QVector& v)
{
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = to_double(v[i]);
    return out;
}

Eigen::MatrixXd to_eigen(const QMatrix& m)
{
    Eigen::MatrixXd out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = to_double(m(i, j));
    return out;
}

Complex coth_minus_one(Complex z)
{
    const Complex e = std::exp(-2.0 * z);
    return 2.0 * e / (1.0 - e);
}

Complex stable_coth(Complex z)
{
    if (z.real() < 0) return -stable_coth(-z);
    return 1.0 + coth_minus_one(z);
}

namespace {

Complex coth_minus_one_any(Complex z)
{
    return z.real() > 0 ? coth_minus_one(z) : stable_coth(z) - 1.0;
}

double root_value(const RootSystem& rs, std::size_t i, const Eigen::VectorXd& a)
{
    return to_eigen(rs.roots()[i].coords).dot(a);
}

void check_jet(const RootSystem& rs, const RadialJet& jet)
{
    const auto n = static_cast<Eigen::Index>(rs.dim());
    if (jet.point.size() != n || jet.gradient.size() != n || jet.hessian.rows() != n || jet.hessian.cols() != n)
        throw ParameterError("jet dimensions do not match the root system");
}

// sinh(w x) / sinh(x), even in x; equals w at x = 0.
Complex sinh_ratio(Complex w, double x)
{
    x = std::abs(x);
    if (x < 1e-4) {
        const Complex w2 = w * w;
        return w * (1.0 + (w2 - 1.0) * x * x / 6.0 + (3.0 * w2 * w2 - 10.0 * w2 + 7.0) * std::pow(x, 4) / 360.0);
    }
    if (x > 20.0) {
        return std::exp((w - 1.0) * x) * (1.0 - std::exp(-2.0 * w * x)) / (1.0 - std::exp(-2.0 * x));
    }
    return std::sinh(w * x) / std::sinh(x);
}

} // namespace

double eval_eta(const RootSystem& rs, const Eigen::VectorXd& a)
{
    if (a.size() != static_cast<Eigen::Index>(rs.dim())) throw ParameterError("point has wrong dimension");
    double eta = 1.0;
    for (std::size_t i = 0; i < rs.positive_count(); ++i) {
        const double x = root_value(rs, i, a);
        if (x < -1e-14 * (1.0 + a.norm())) throw DomainError("point lies outside the closed positive chamber");
        if (x <= 0) return 0.0;
        eta *= std::pow(std::sinh(x), rs.roots()[i].mult);
    }
    return eta;
}

bool is_regular(const RootSystem& rs, const RadialJet& jet)
{
    for (std::size_t i = 0; i < rs.positive_count(); ++i) {
        if (jet.exact_point) {
            if (sgn(dot(rs.roots()[i].coords, *jet.exact_point)) == 0) return false;
        } else if (std::abs(root_value(rs, i, jet.point)) <= 1e-12) {
            return false;
        }
    }
    return true;
}

Complex flat_laplacian(const RootSystem& rs, const RadialJet& jet)
{
    const Eigen::MatrixXd ginv = to_eigen(rs.space().dual_gram());
    return -(ginv.cast<Complex>().cwiseProduct(jet.hessian)).sum();
}

Complex vector_action(const Eigen::VectorXd& x, const RadialJet& jet) { return -x.cast<Complex>().dot(jet.gradient); }

Complex apply_radial(const RootSystem& rs, const RadialJet& jet, const ScalingParameter& theta)
{
    check_jet(rs, jet);
    if (!is_regular(rs, jet)) throw DomainError("apply_radial needs a regular point (alpha(a) != 0 for all roots)");
    const Complex w = theta.w();
    Complex first = 0.0;
    for (std::size_t i = 0; i < rs.positive_count(); ++i) {
        const auto& r = rs.roots()[i];
        const Eigen::VectorXd h = to_eigen(rs.space().metric_dual(r.coords));
        first += static_cast<double>(r.mult) * stable_coth(w * root_value(rs, i, jet.point)) * vector_action(h, jet);
    }
    return flat_laplacian(rs, jet) / (w * w) + first / w;
}

Complex jacobian(const RootSystem& rs, const Eigen::VectorXd& a, const ScalingParameter& theta)
{
    if (a.size() != static_cast<Eigen::Index>(rs.dim())) throw ParameterError("point has wrong dimension");
    const Complex w = theta.w();
    Complex j = std::pow(w, static_cast<double>(rs.dim()));
    for (std::size_t i = 0; i < rs.positive_count(); ++i)
        j *= std::pow(sinh_ratio(w, root_value(rs, i, a)), static_cast<double>(rs.roots()[i].mult));
    return j;
}

RadialJet multiply_exponential(const RadialJet& jet, const Eigen::VectorXd& covector, Complex c)
{
    const Complex e = std::exp(c * covector.dot(jet.point));
    const Eigen::VectorXcd l = c * covector.cast<Complex>();
    RadialJet out;
    out.point = jet.point;
    out.exact_point = jet.exact_point;
    out.value = e * jet.value;
    out.gradient = e * (jet.gradient + l * jet.value);
    out.hessian = e * (jet.hessian + l * jet.gradient.transpose() + jet.gradient * l.transpose() +
                       l * l.transpose() * jet.value);
    return out;
}

namespace {

// gram^{-1} restricted to the span of the rows of `basis`: B^T (B G B^T)^{-1} B.
QMatrix restricted_inverse_metric(const QMatrix& basis, const QMatrix& gram)
{
    const std::size_t n = gram.rows();
    if (basis.rows() == 0) return QMatrix(n, n);
    QMatrix inner = *inverse(basis * gram * basis.transpose());
    return basis.transpose() * inner * basis;
}

} // namespace

ProductModelData decompose(const RootSystem& rs, const WallLattice& lat, std::size_t b)
{
    SubsystemData s = subsystem(rs, lat, b);
    const auto& sp = rs.space();
    std::vector<ErrorTerm> terms;
    for (std::size_t i = 0; i < rs.positive_count(); ++i) {
        if (std::find(s.roots.begin(), s.roots.end(), i) != s.roots.end()) continue;
        const auto& r = rs.roots()[i];
        terms.push_back({i, r.coords, r.mult, sp.metric_dual(r.coords)});
    }
    ProductModelData d{b,
                       s,
                       std::move(terms),
                       to_eigen(restricted_inverse_metric(s.s_b, sp.gram())),
                       to_eigen(restricted_inverse_metric(s.s_perp, sp.gram())),
                       to_eigen(sp.metric_dual(s.rho_diff)),
                       to_eigen(sp.metric_dual(s.rho_b))};
    // the two restricted metrics add up to gram^{-1}
    if (!(restricted_inverse_metric(s.s_b, sp.gram()) + restricted_inverse_metric(s.s_perp, sp.gram()) ==
          sp.dual_gram()))
        throw InternalError("S_b and S^b metrics do not split gram^{-1}");
    return d;
}

Complex tangential_laplacian(const ProductModelData& d, const RadialJet& jet)
{
    return -(d.q_tangential.cast<Complex>().cwiseProduct(jet.hessian)).sum();
}

ProductModelParts evaluate_parts(const RootSystem& rs, const ProductModelData& d, const RadialJet& jet)
{
    check_jet(rs, jet);
    if (!is_regular(rs, jet)) throw DomainError("evaluate_parts needs a regular point");
    ProductModelParts p;
    p.tangential = tangential_laplacian(d, jet) + 2.0 * vector_action(d.h_rho_diff, jet);

    p.subsystem = -(d.q_subsystem.cast<Complex>().cwiseProduct(jet.hessian)).sum() + 2.0 * vector_action(d.h_rho_b, jet);
    for (auto i : d.subsystem.roots) {
        if (!rs.is_positive(i)) continue;
        const auto& r = rs.roots()[i];
        const Eigen::VectorXd h = to_eigen(rs.space().metric_dual(r.coords));
        p.subsystem += static_cast<double>(r.mult) * coth_minus_one_any(root_value(rs, i, jet.point)) * vector_action(h, jet);
    }

    p.error = 0.0;
    for (const auto& t : d.error_terms)
        p.error += static_cast<double>(t.mult) * coth_minus_one_any(root_value(rs, t.root, jet.point)) *
                   vector_action(to_eigen(t.h_alpha), jet);
    return p;
}

Complex tangential_scaled(const ProductModelData& d, const RadialJet& jet, const ScalingParameter& theta)
{
    const Complex w = theta.w();
    return tangential_laplacian(d, jet) / (w * w) + 2.0 * vector_action(d.h_rho_diff, jet) / w;
}

Complex tangential_conjugated(const ProductModelData& d, const RadialJet& jet, const ScalingParameter& theta)
{
    const Complex w = theta.w();
    return tangential_laplacian(d, jet) / (w * w) + to_double(d.subsystem.rho_diff_norm2) * jet.value;
}

double error_coefficient_bound(double c, double norm_a)
{
    if (!(c > 0) || !(norm_a > 0)) throw ParameterError("bound needs c > 0 and |a| > 0");
    const double e = std::exp(-2.0 * c * norm_a);
    return 2.0 * e / (1.0 - e);
}

double cone_constant(const RootSystem& rs, const ProductModelData& d, const Eigen::VectorXd& a)
{
    const double norm = std::sqrt(a.dot(to_eigen(rs.space().gram()) * a));
    double c = std::numeric_limits<double>::infinity();
    for (const auto& t : d.error_terms) c = std::min(c, to_eigen(t.alpha).dot(a) / norm);
    return c;
}

DiagonalizingChange gamma_ldu(const RootSystem& rs, const std::vector<std::size_t>& order)
{
    if (!rs.spans()) throw DomainError("gamma_ldu needs spanning simple roots");
    std::vector<std::size_t> ord = order;
    if (ord.empty())
        for (std::size_t i = 0; i < rs.rank(); ++i) ord.push_back(i);
    if (ord.size() != rs.rank()) throw ParameterError("order must list every simple root once");
    {
        auto sorted = ord;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i)
            if (sorted[i] != i) throw ParameterError("order must be a permutation of the simple roots");
    }
    const std::size_t n = ord.size();
    QMatrix gamma(n, n);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
            gamma(p, q) = rs.space().dual_inner(rs.roots()[rs.simples()[ord[p]]].coords,
                                                rs.roots()[rs.simples()[ord[q]]].coords);

    QMatrix l = QMatrix::identity(n);
    QVector dg(n);
    for (std::size_t j = 0; j < n; ++j) {
        Rational s = gamma(j, j);
        for (std::size_t k = 0; k < j; ++k) s -= l(j, k) * l(j, k) * dg[k];
        if (sgn(s) <= 0) throw InternalError("Gamma is not positive definite");
        dg[j] = s;
        for (std::size_t i = j + 1; i < n; ++i) {
            Rational t = gamma(i, j);
            for (std::size_t k = 0; k < j; ++k) t -= l(i, k) * l(j, k) * dg[k];
            l(i, j) = t / dg[j];
        }
    }
    QMatrix theta = *inverse(l);
    if (!(theta * gamma * theta.transpose() == QMatrix::diagonal(dg)))
        throw InternalError("Theta Gamma Theta^T is not diagonal");
    return {gamma, l, theta, dg};
}

Complex plane_wave_residual(const RootSystem& rs, const Eigen::VectorXd& beta, const Eigen::VectorXd& a)
{
    const auto n = static_cast<Eigen::Index>(rs.dim());
    if (beta.size() != n || a.size() != n) throw ParameterError("plane wave data has wrong dimension");
    const Eigen::VectorXd r = to_eigen(rho(rs));
    const Eigen::MatrixXd ginv = to_eigen(rs.space().dual_gram());
    const double rho2 = r.dot(ginv * r);
    const Complex lambda = rho2 - beta.dot(ginv * beta);

    // jet of u = exp((rho - beta)(H))
    const Eigen::VectorXd k = r - beta;
    RadialJet u;
    u.point = a;
    u.value = std::exp(k.dot(a));
    u.gradient = (k * u.value.real()).cast<Complex>();
    u.hessian = (k * k.transpose() * u.value.real()).cast<Complex>();

    const RadialJet v = multiply_exponential(u, r, -1.0);
    const Complex conj_lap = std::exp(r.dot(a)) * flat_laplacian(rs, v);
    return conj_lap + (rho2 - lambda) * u.value;
}

} // namespace radialspec
