#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace radialspec {

using Rational = mpq_class;
using QVector = std::vector<Rational>;

/// "p/q" (or "p" when q = 1), always in lowest terms.
std::string to_string(const Rational& q);
/// Accepts "p", "p/q", "-p/q" and finite decimal literals such as "0.25".
Rational parse_rational(const std::string& text);
double to_double(const Rational& q);

Rational dot(const QVector& a, const QVector& b);
QVector operator+(const QVector& a, const QVector& b);
QVector operator-(const QVector& a, const QVector& b);
QVector operator-(const QVector& a);
QVector operator*(const Rational& s, const QVector& a);
bool is_zero(const QVector& v);
std::strong_ordering lex_compare(const QVector& a, const QVector& b);

/// Dense row-major matrix over the rationals. Sizes here are tiny (rank <= 8),
/// so nothing is clever about storage.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols);

    static QMatrix identity(std::size_t n);
    static QMatrix from_rows(const std::vector<QVector>& rows, std::size_t cols);
    static QMatrix diagonal(const QVector& d);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    QVector row(std::size_t i) const;
    QVector col(std::size_t j) const;
    std::vector<QVector> row_list() const;

    QMatrix transpose() const;
    bool is_symmetric() const;
    bool is_square() const noexcept { return rows_ == cols_; }

    friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
    friend QVector operator*(const QMatrix& a, const QVector& v);
    friend QMatrix operator+(const QMatrix& a, const QMatrix& b);
    friend QMatrix operator-(const QMatrix& a, const QMatrix& b);
    friend bool operator==(const QMatrix& a, const QMatrix& b);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Lexicographic order on (rows, cols, entries row-major).
std::strong_ordering lex_compare(const QMatrix& a, const QMatrix& b);

struct LexLess {
    bool operator()(const QMatrix& a, const QMatrix& b) const { return lex_compare(a, b) < 0; }
    bool operator()(const QVector& a, const QVector& b) const { return lex_compare(a, b) < 0; }
};

/// Reduced row-echelon form with zero rows dropped; pivots are 1.
QMatrix row_basis(const QMatrix& m);
std::size_t rank(const QMatrix& m);
/// Basis of {x : m x = 0} as rows, in reduced row-echelon form.
QMatrix nullspace(const QMatrix& m);
std::optional<QMatrix> inverse(const QMatrix& m);
Rational determinant(const QMatrix& m);
/// Exact Sylvester test.
bool is_positive_definite(const QMatrix& m);
/// Coefficients c with sum_i c_i rows[i] == target, when unique (rows independent)
/// and solvable; std::nullopt otherwise.
std::optional<QVector> combination_of(const std::vector<QVector>& rows, const QVector& target);

} // namespace radialspec
