#pragma once

#include "radialspec/rational.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace radialspec {

/// The flat a with an exact inner product. Vectors of a are coordinate columns
/// in a fixed basis; covectors (roots) are coordinate rows in the dual basis,
/// so alpha(H) = dot(alpha, H).
class AmbientSpace {
public:
    /// `gram` must be symmetric positive definite (checked exactly). A 0x0 gram
    /// gives the one-point space used as the rank-0 base case.
    explicit AmbientSpace(QMatrix gram);

    std::size_t dim() const noexcept { return gram_.rows(); }
    const QMatrix& gram() const noexcept { return gram_; }
    /// gram^{-1}: the induced inner product on covectors.
    const QMatrix& dual_gram() const noexcept { return dual_gram_; }

    Rational inner(const QVector& x, const QVector& y) const;
    Rational dual_inner(const QVector& a, const QVector& b) const;
    /// Metric dual of a covector: the vector H_a with <H, H_a> = a(H).
    QVector metric_dual(const QVector& covector) const;

private:
    QMatrix gram_;
    QMatrix dual_gram_;
};

struct Root {
    QVector coords;
    int mult = 1;
};

/// How the Gram matrix was normalized; carried into every report.
enum class Normalization { trace_form, unit_root, killing_form, custom };

std::string to_string(Normalization n);
Normalization parse_normalization(const std::string& s);

/// A (restricted) root system with multiplicities. Construction validates all
/// invariants exactly and puts the roots in canonical order: positive roots
/// first, sorted lexicographically descending on their simple-root
/// coordinates, then the negatives in the same order. Hence
/// roots()[i + P] == -roots()[i] where P = number of positive roots.
class RootSystem {
public:
    /// `positive[i]` flags roots[i]; `simples` index into `roots` and fix the
    /// order alpha_1, ..., alpha_r.
    RootSystem(AmbientSpace space, std::vector<Root> roots, std::vector<bool> positive,
               std::vector<std::size_t> simples,
               Normalization normalization = Normalization::custom);

    /// Rank-0 system on the one-point space.
    static RootSystem point();

    const AmbientSpace& space() const noexcept { return space_; }
    std::size_t dim() const noexcept { return space_.dim(); }
    /// Dimension of the span of the roots.
    std::size_t rank() const noexcept { return simples_.size(); }
    bool spans() const noexcept { return rank() == dim(); }

    const std::vector<Root>& roots() const noexcept { return roots_; }
    std::size_t positive_count() const noexcept { return roots_.size() / 2; }
    bool is_positive(std::size_t i) const noexcept { return i < positive_count(); }
    std::size_t negative_of(std::size_t i) const noexcept;
    /// Indices of alpha_1..alpha_r.
    const std::vector<std::size_t>& simples() const noexcept { return simples_; }
    /// Expansion of roots()[i] in the simples (integers).
    const QVector& simple_coordinates(std::size_t i) const { return simple_coords_[i]; }

    std::optional<std::size_t> find(const QVector& coords) const;
    Normalization normalization() const noexcept { return normalization_; }

    /// Same system in another basis of a: `basis_change` has as columns the new
    /// basis vectors expressed in the old coordinates.
    RootSystem change_basis(const QMatrix& basis_change) const;

    friend bool operator==(const RootSystem& a, const RootSystem& b);

private:
    AmbientSpace space_;
    std::vector<Root> roots_;
    std::vector<std::size_t> simples_;
    std::vector<QVector> simple_coords_;
    Normalization normalization_;
};

// --- constructors for the built-in families ---------------------------------

/// SL(n+1)/SO(n+1): traceless diagonal matrices with the trace form, in the
/// basis of simple coroots h_i = E_ii - E_{i+1,i+1}. Gram = Cartan matrix.
RootSystem a_series(int n);
/// Single positive root of length 1 and multiplicity m (hyperbolic space H^{m+1}).
RootSystem rank_one(int m);
/// Root-free Euclidean factor R^d (for reductive products).
RootSystem flat_factor(int d);
/// Orthogonal product; coordinates concatenated, Gram block-diagonal.
RootSystem product(const std::vector<RootSystem>& factors);

// --- operations ---------------------------------------------------------------

/// rho = 1/2 sum over positive roots of m_alpha alpha.
QVector rho(const RootSystem& rs);
/// |rho|^2 in the dual metric.
Rational rho_norm2(const RootSystem& rs);

/// H_alpha = gram^{-1} alpha; DomainError if alpha is not a root.
QVector root_vector(const RootSystem& rs, const QVector& alpha);

/// An element of the Weyl group as a matrix acting on coordinate columns of a.
class WeylElement {
public:
    explicit WeylElement(QMatrix matrix);

    const QMatrix& matrix() const noexcept { return matrix_; }
    QVector act(const QVector& vector) const;
    /// Dual action on covectors: (w beta)(H) = beta(w^{-1} H).
    QVector act_dual(const QVector& covector) const;
    WeylElement compose(const WeylElement& rhs) const;

private:
    QMatrix matrix_;
    QMatrix dual_;
};

/// Reflection across ker(alpha).
WeylElement reflection(const RootSystem& rs, std::size_t root_index);

inline constexpr std::size_t default_weyl_cap = 1'000'000;

/// Closure of the simple reflections, sorted lexicographically by matrix.
/// ResourceError if the group grows beyond `cap`.
std::vector<WeylElement> weyl_group(const RootSystem& rs, std::size_t cap = default_weyl_cap);

/// Permutation of root indices induced by the dual action of w.
std::vector<std::size_t> root_permutation(const RootSystem& rs, const WeylElement& w);

/// The same roots on the span of their root vectors H_alpha (equal to `rs`
/// up to basis when the roots span).
RootSystem essential_part(const RootSystem& rs);

/// K_1..K_n with alpha_i(K_j) = delta_ij; DomainError if the simples do not span.
std::vector<QVector> dual_basis(const RootSystem& rs);

/// Isomorphism-invariant serialization used to key injected point spectra.
/// The system is rewritten in the fundamental-coweight basis of its simples and
/// the lexicographically least form over permutations of the simples is taken.
std::string canonical_key(const RootSystem& rs);

/// Human-readable type such as "A2", "A1 x A1" (empty string for rank 0).
std::string type_label(const RootSystem& rs);

} // namespace radialspec
