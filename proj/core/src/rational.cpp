#include "radialspec/rational.hpp"

#include "radialspec/errors.hpp"

#include <algorithm>
#include <cctype>

namespace radialspec {

std::string to_string(const Rational& q)
{
    Rational c = q;
    c.canonicalize();
    return c.get_str();
}

Rational parse_rational(const std::string& text)
{
    std::string s;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    }
    if (s.empty()) throw ParameterError("empty rational literal");

    auto dot_pos = s.find('.');
    if (dot_pos != std::string::npos) {
        if (s.find_first_of("/eE") != std::string::npos)
            throw ParameterError("unsupported rational literal '" + text + "'");
        bool negative = s[0] == '-';
        std::string digits = s.substr(negative || s[0] == '+' ? 1 : 0);
        auto p = digits.find('.');
        std::string whole = digits.substr(0, p);
        std::string frac = digits.substr(p + 1);
        if ((whole + frac).empty() ||
            !std::all_of(whole.begin(), whole.end(), ::isdigit) ||
            !std::all_of(frac.begin(), frac.end(), ::isdigit))
            throw ParameterError("malformed rational literal '" + text + "'");
        mpz_class num((whole.empty() ? "0" : whole) + frac, 10);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
        Rational q(num, den);
        q.canonicalize();
        return negative ? Rational(-q) : q;
    }

    Rational q;
    if (q.set_str(s, 10) != 0) throw ParameterError("malformed rational literal '" + text + "'");
    if (q.get_den() == 0) throw ParameterError("zero denominator in '" + text + "'");
    q.canonicalize();
    return q;
}

double to_double(const Rational& q) { return q.get_d(); }

Rational dot(const QVector& a, const QVector& b)
{
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

QVector operator+(const QVector& a, const QVector& b)
{
    QVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

QVector operator-(const QVector& a, const QVector& b)
{
    QVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

QVector operator-(const QVector& a)
{
    QVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

QVector operator*(const Rational& s, const QVector& a)
{
    QVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

bool is_zero(const QVector& v)
{
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

namespace {

std::strong_ordering cmp(const Rational& a, const Rational& b)
{
    int c = ::cmp(a, b);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

} // namespace

std::strong_ordering lex_compare(const QVector& a, const QVector& b)
{
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (auto c = cmp(a[i], b[i]); c != 0) return c;
    }
    return a.size() <=> b.size();
}

QMatrix::QMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

QMatrix QMatrix::identity(std::size_t n)
{
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

QMatrix QMatrix::from_rows(const std::vector<QVector>& rows, std::size_t cols)
{
    QMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw ParameterError("ragged matrix rows");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

QMatrix QMatrix::diagonal(const QVector& d)
{
    QMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

QVector QMatrix::row(std::size_t i) const
{
    return QVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

QVector QMatrix::col(std::size_t j) const
{
    QVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

std::vector<QVector> QMatrix::row_list() const
{
    std::vector<QVector> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
}

QMatrix QMatrix::transpose() const
{
    QMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool QMatrix::is_symmetric() const
{
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b)
{
    if (a.cols_ != b.rows_) throw InternalError("matrix product shape mismatch");
    QMatrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            if (sgn(a(i, k)) == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += a(i, k) * b(k, j);
        }
    return r;
}

QVector operator*(const QMatrix& a, const QVector& v)
{
    if (a.cols_ != v.size()) throw InternalError("matrix-vector shape mismatch");
    QVector r(a.rows_, Rational(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t j = 0; j < a.cols_; ++j) r[i] += a(i, j) * v[j];
    return r;
}

QMatrix operator+(const QMatrix& a, const QMatrix& b)
{
    QMatrix r = a;
    for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] += b.data_[i];
    return r;
}

QMatrix operator-(const QMatrix& a, const QMatrix& b)
{
    QMatrix r = a;
    for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] -= b.data_[i];
    return r;
}

bool operator==(const QMatrix& a, const QMatrix& b)
{
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::strong_ordering lex_compare(const QMatrix& a, const QMatrix& b)
{
    if (auto c = a.rows() <=> b.rows(); c != 0) return c;
    if (auto c = a.cols() <=> b.cols(); c != 0) return c;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (auto c = cmp(a(i, j), b(i, j)); c != 0) return c;
    return std::strong_ordering::equal;
}

namespace {

// In-place Gauss-Jordan to reduced row-echelon form; returns pivot columns.
std::vector<std::size_t> gauss_jordan(QMatrix& m)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        Rational inv = 1 / m(r, c);
        for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || sgn(m(i, c)) == 0) continue;
            Rational f = m(i, c);
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

} // namespace

QMatrix row_basis(const QMatrix& m)
{
    QMatrix w = m;
    auto pivots = gauss_jordan(w);
    QMatrix out(pivots.size(), m.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = w(i, j);
    return out;
}

std::size_t rank(const QMatrix& m)
{
    QMatrix w = m;
    return gauss_jordan(w).size();
}

QMatrix nullspace(const QMatrix& m)
{
    QMatrix w = m;
    auto pivots = gauss_jordan(w);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;

    std::vector<QVector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        QVector v(m.cols(), Rational(0));
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -w(i, free);
        basis.push_back(std::move(v));
    }
    return row_basis(QMatrix::from_rows(basis, m.cols()));
}

std::optional<QMatrix> inverse(const QMatrix& m)
{
    if (!m.is_square()) return std::nullopt;
    std::size_t n = m.rows();
    QMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    auto pivots = gauss_jordan(aug);
    if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) return std::nullopt;
    QMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

Rational determinant(const QMatrix& m)
{
    if (!m.is_square()) throw InternalError("determinant of non-square matrix");
    QMatrix w = m;
    std::size_t n = m.rows();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sgn(w(p, c)) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(w(p, j), w(c, j));
            det = -det;
        }
        det *= w(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (sgn(w(i, c)) == 0) continue;
            Rational f = w(i, c) / w(c, c);
            for (std::size_t j = c; j < n; ++j) w(i, j) -= f * w(c, j);
        }
    }
    return det;
}

bool is_positive_definite(const QMatrix& m)
{
    if (!m.is_symmetric()) return false;
    for (std::size_t k = 1; k <= m.rows(); ++k) {
        QMatrix minor(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) minor(i, j) = m(i, j);
        if (sgn(determinant(minor)) <= 0) return false;
    }
    return true;
}

std::optional<QVector> combination_of(const std::vector<QVector>& rows, const QVector& target)
{
    std::size_t k = rows.size();
    std::size_t n = target.size();
    // Columns are the rows; solve [R^T | target].
    QMatrix aug(n, k + 1);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j) aug(j, i) = rows[i][j];
    for (std::size_t j = 0; j < n; ++j) aug(j, k) = target[j];
    auto pivots = gauss_jordan(aug);
    if (!pivots.empty() && pivots.back() == k) return std::nullopt;
    if (pivots.size() != k) return std::nullopt;
    QVector c(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = aug(i, k);
    return c;
}

} // namespace radialspec
