#pragma once

#include "radialspec/rational.hpp"
#include "radialspec/root_system.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace radialspec {

/// Intersections of the walls ker(alpha), alpha in Lambda+, together with a.
/// Each flat is stored by a basis in reduced row-echelon form (rows are vectors
/// of a). Index 0 is a itself and the last index is {0}.
class WallLattice {
public:
    explicit WallLattice(std::vector<QMatrix> flats);

    std::size_t size() const noexcept { return flats_.size(); }
    std::size_t origin() const noexcept { return 0; }
    /// The index * of the zero subspace.
    std::size_t star() const noexcept { return flats_.size() - 1; }

    const QMatrix& basis(std::size_t b) const { return flats_.at(b); }
    std::size_t dim(std::size_t b) const { return flats_.at(b).rows(); }
    /// Indices c != b with S_c contained in S_b, ascending.
    const std::vector<std::size_t>& contains(std::size_t b) const { return contains_.at(b); }
    std::optional<std::size_t> find(const QMatrix& basis) const;

private:
    std::vector<QMatrix> flats_;
    std::vector<std::vector<std::size_t>> contains_;
};

/// Intersection of two subspaces given by row bases; result in canonical form.
QMatrix intersect(const QMatrix& u, const QMatrix& v);
/// Indices of roots vanishing identically on the span of `basis`.
std::vector<std::size_t> vanishing_roots(const RootSystem& rs, const QMatrix& basis);

/// DomainError when the roots do not span the dual of a.
WallLattice compute_lattice(const RootSystem& rs);

/// Relatively open face of the closed positive chamber: alpha_j = 0 for the
/// listed simples, alpha_j > 0 for the others. Positions refer to rs.simples().
struct ChamberFace {
    std::size_t b = 0;
    std::vector<std::size_t> zero_simples;
    std::vector<std::size_t> positive_simples;
};

/// One face per subset of simples, sorted by lattice index.
std::vector<ChamberFace> chamber_faces(const RootSystem& rs, const WallLattice& lat);

struct SubsystemData {
    std::size_t b = 0;
    QMatrix s_b;       ///< basis of S_b (rows)
    QMatrix s_perp;    ///< basis of S^b, the gram-orthocomplement (rows)
    std::vector<std::size_t> roots;  ///< Lambda_b as indices into rs.roots()
    QVector rho_b;
    QVector rho_diff;  ///< rho - rho_b
    Rational rho_b_norm2;
    Rational rho_diff_norm2;
    /// S_b is the span of a face of the closed positive chamber (b in I+).
    bool face = false;
    /// rho - rho_b lies in S_b, is orthogonal to rho_b, and the norms add up.
    /// Holds for every face index; can fail for the other flats.
    bool orthogonal_split = false;
    /// Lambda_b as a root system on S^b, in the coordinates of the s_perp basis.
    RootSystem system;
    /// e.g. "R^1 x A2"; the flat factor is S_b.
    std::string type;
};

/// Lambda_b+ = Lambda_b intersected with Lambda+. The split identities are
/// decided exactly and reported, not enforced. DomainError for b = *.
SubsystemData subsystem(const RootSystem& rs, const WallLattice& lat, std::size_t b);

inline constexpr std::size_t default_sign_rank_cap = 4;

struct SignMap {
    std::vector<int> signs;  ///< -1, 0, +1 per root in canonical order
    bool realizable = true;
    std::size_t orbit = 0;
    bool representative = false;  ///< the member that is >= 0 on positives
};

struct SignFaceTable {
    std::vector<SignMap> faces;
    std::size_t orbit_count = 0;
    /// For each orbit, the index into `faces` of its representative.
    std::vector<std::size_t> representatives;
};

/// S_b spans a face of the closed positive chamber.
bool is_face_index(const RootSystem& rs, const WallLattice& lat, std::size_t b);

/// Exact feasibility of sign(alpha(H)) = signs[alpha] for all roots.
bool sign_map_realizable(const RootSystem& rs, const std::vector<int>& signs);

/// All realizable sign maps grouped into Weyl orbits. ResourceError if the
/// rank exceeds `rank_cap`.
SignFaceTable sign_faces(const RootSystem& rs, std::size_t rank_cap = default_sign_rank_cap);

struct BoundaryFaceRecord {
    std::size_t b = 0;
    std::string label;     ///< "F_b"
    std::size_t fiber_dim = 0;  ///< dim S^b
    std::size_t base_dim = 0;   ///< dim S_b - 1, the sphere C_b
    std::string fibration;
};

/// One record per b != *.
std::vector<BoundaryFaceRecord> face_correspondence(const RootSystem& rs, const WallLattice& lat);

} // namespace radialspec
