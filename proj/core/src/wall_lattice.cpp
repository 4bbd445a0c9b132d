#include "radialspec/wall_lattice.hpp"

#include "radialspec/errors.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>

namespace radialspec {

namespace {

bool flat_less(const QMatrix& a, const QMatrix& b)
{
    if (a.rows() != b.rows()) return a.rows() > b.rows();
    return lex_compare(a, b) < 0;
}

// Is every row of `sub` in the row span of `super`?
bool subspace_of(const QMatrix& sub, const QMatrix& super)
{
    if (sub.rows() == 0) return true;
    if (sub.rows() > super.rows()) return false;
    std::vector<QVector> rows = super.row_list();
    for (const auto& r : sub.row_list()) rows.push_back(r);
    return rank(QMatrix::from_rows(rows, super.cols())) == super.rows();
}

QMatrix stack(const std::vector<QVector>& rows, std::size_t cols) { return QMatrix::from_rows(rows, cols); }

} // namespace

WallLattice::WallLattice(std::vector<QMatrix> flats) : flats_(std::move(flats))
{
    if (flats_.empty()) throw InternalError("empty wall lattice");
    contains_.resize(flats_.size());
    for (std::size_t b = 0; b < flats_.size(); ++b)
        for (std::size_t c = 0; c < flats_.size(); ++c)
            if (c != b && subspace_of(flats_[c], flats_[b])) contains_[b].push_back(c);
}

std::optional<std::size_t> WallLattice::find(const QMatrix& basis) const
{
    QMatrix canon = row_basis(basis);
    for (std::size_t b = 0; b < flats_.size(); ++b)
        if (flats_[b].rows() == canon.rows() && flats_[b] == canon) return b;
    return std::nullopt;
}

QMatrix intersect(const QMatrix& u, const QMatrix& v)
{
    const std::size_t n = u.cols();
    // annihilators, stacked
    std::vector<QVector> rows = nullspace(u).row_list();
    for (auto& r : nullspace(v).row_list()) rows.push_back(std::move(r));
    return nullspace(stack(rows, n));
}

std::vector<std::size_t> vanishing_roots(const RootSystem& rs, const QMatrix& basis)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < rs.roots().size(); ++i) {
        bool vanishes = true;
        for (std::size_t r = 0; r < basis.rows() && vanishes; ++r)
            vanishes = sgn(dot(rs.roots()[i].coords, basis.row(r))) == 0;
        if (vanishes) out.push_back(i);
    }
    return out;
}

WallLattice compute_lattice(const RootSystem& rs)
{
    if (!rs.spans()) throw DomainError("roots do not span; compose with a flat factor via product()");
    const std::size_t n = rs.dim();

    // A flat is determined by the set of positive roots vanishing on it; grow by
    // adding one more root to the annihilator.
    std::set<QMatrix, LexLess> seen;
    std::deque<QMatrix> queue;
    QMatrix whole = QMatrix::identity(n);
    seen.insert(whole);
    queue.push_back(whole);
    while (!queue.empty()) {
        QMatrix f = std::move(queue.front());
        queue.pop_front();
        auto van = vanishing_roots(rs, f);
        std::vector<QVector> ann;
        for (auto i : van)
            if (rs.is_positive(i)) ann.push_back(rs.roots()[i].coords);
        for (std::size_t i = 0; i < rs.positive_count(); ++i) {
            if (std::find(van.begin(), van.end(), i) != van.end()) continue;
            auto rows = ann;
            rows.push_back(rs.roots()[i].coords);
            QMatrix next = nullspace(stack(rows, n));
            if (seen.insert(next).second) queue.push_back(std::move(next));
        }
    }
    std::vector<QMatrix> flats(seen.begin(), seen.end());
    std::sort(flats.begin(), flats.end(), flat_less);
    return WallLattice(std::move(flats));
}

std::vector<ChamberFace> chamber_faces(const RootSystem& rs, const WallLattice& lat)
{
    const std::size_t r = rs.rank();
    std::vector<ChamberFace> faces;
    for (std::size_t mask = 0; mask < (std::size_t{1} << r); ++mask) {
        ChamberFace f;
        std::vector<QVector> ann;
        for (std::size_t j = 0; j < r; ++j) {
            if (mask & (std::size_t{1} << j)) {
                f.zero_simples.push_back(j);
                ann.push_back(rs.roots()[rs.simples()[j]].coords);
            } else {
                f.positive_simples.push_back(j);
            }
        }
        QMatrix span = nullspace(stack(ann, rs.dim()));
        auto b = lat.find(span);
        if (!b) throw InternalError("chamber face span missing from the lattice");
        f.b = *b;
        faces.push_back(std::move(f));
    }
    std::sort(faces.begin(), faces.end(), [](const ChamberFace& a, const ChamberFace& b) { return a.b < b.b; });
    return faces;
}

namespace {

// Lambda_b restricted to S^b with basis rows c: coordinates c * alpha.
RootSystem restricted_system(const RootSystem& rs, const QMatrix& c, const std::vector<std::size_t>& idx)
{
    if (c.rows() == 0) return RootSystem::point();
    const QMatrix gram = c * rs.space().gram() * c.transpose();

    std::vector<Root> roots;
    std::vector<bool> positive;
    std::vector<std::size_t> pos_local;
    for (auto i : idx) {
        if (rs.is_positive(i)) pos_local.push_back(roots.size());
        roots.push_back({c * rs.roots()[i].coords, rs.roots()[i].mult});
        positive.push_back(rs.is_positive(i));
    }
    // simples = positive roots that are not a sum of two positive roots
    std::vector<std::size_t> simples;
    for (auto p : pos_local) {
        bool decomposable = false;
        for (auto q : pos_local) {
            for (auto s : pos_local) {
                if (roots[q].coords + roots[s].coords == roots[p].coords) {
                    decomposable = true;
                    break;
                }
            }
            if (decomposable) break;
        }
        if (!decomposable) simples.push_back(p);
    }
    return RootSystem(AmbientSpace(gram), std::move(roots), std::move(positive), std::move(simples),
                      rs.normalization());
}

bool in_span(const QMatrix& basis, const QVector& v)
{
    std::vector<QVector> rows = basis.row_list();
    rows.push_back(v);
    return rank(QMatrix::from_rows(rows, v.size())) == basis.rows();
}

} // namespace

bool is_face_index(const RootSystem& rs, const WallLattice& lat, std::size_t b)
{
    std::vector<QVector> ann;
    for (auto s : rs.simples()) {
        const auto& a = rs.roots()[s].coords;
        bool vanishes = true;
        for (std::size_t r = 0; r < lat.dim(b) && vanishes; ++r) vanishes = sgn(dot(a, lat.basis(b).row(r))) == 0;
        if (vanishes) ann.push_back(a);
    }
    return nullspace(QMatrix::from_rows(ann, rs.dim())) == lat.basis(b);
}

SubsystemData subsystem(const RootSystem& rs, const WallLattice& lat, std::size_t b)
{
    if (b >= lat.size()) throw DomainError("lattice index out of range");
    if (b == lat.star()) throw DomainError("no subsystem at the origin index *");
    const auto& sp = rs.space();
    const QMatrix& sb = lat.basis(b);
    const QMatrix perp = nullspace(sb * sp.gram());

    auto idx = vanishing_roots(rs, sb);
    QVector rho_b(rs.dim(), Rational(0));
    for (auto i : idx)
        if (rs.is_positive(i)) rho_b = rho_b + Rational(rs.roots()[i].mult, 2) * rs.roots()[i].coords;
    const QVector full = rho(rs);
    const QVector diff = full - rho_b;

    for (auto i : idx) {
        QVector h = sp.metric_dual(rs.roots()[i].coords);
        if (!is_zero(sb * sp.gram() * h)) throw InternalError("H_alpha not in S^b");
    }
    Rational nb = sp.dual_inner(rho_b, rho_b);
    Rational nd = sp.dual_inner(diff, diff);
    const bool split = in_span(sb, sp.metric_dual(diff)) && sgn(sp.dual_inner(diff, rho_b)) == 0 &&
                       nb + nd == sp.dual_inner(full, full);
    const bool face = is_face_index(rs, lat, b);
    if (face && !split) throw InternalError("product split fails at a chamber face");

    RootSystem sys = restricted_system(rs, perp, idx);
    std::string type = sb.rows() > 0 ? "R^" + std::to_string(sb.rows()) : std::string();
    std::string inner = type_label(sys);
    if (!inner.empty()) type += (type.empty() ? "" : " x ") + inner;

    return SubsystemData{b,  sb,    perp,           std::move(idx), rho_b,          diff,
                         nb, nd,    face,           split,          std::move(sys), std::move(type)};
}

// --- sign maps ------------------------------------------------------------------

namespace {

// Is {y : c_i . y > 0 for all i} nonempty? Exact Fourier-Motzkin.
bool strict_feasible(std::vector<QVector> rows, std::size_t nvars)
{
    auto normalize = [](QVector& r) {
        // scale by the first nonzero |entry| so duplicates collapse
        for (const auto& x : r) {
            if (sgn(x) != 0) {
                Rational s = abs(x);
                for (auto& y : r) y /= s;
                return;
            }
        }
    };
    for (std::size_t var = 0; var < nvars; ++var) {
        std::vector<QVector> pos, neg, next;
        for (auto& r : rows) {
            if (is_zero(r)) return false;
            int s = sgn(r[var]);
            if (s > 0) pos.push_back(r);
            else if (s < 0) neg.push_back(r);
            else next.push_back(r);
        }
        for (const auto& p : pos) {
            for (const auto& q : neg) {
                QVector comb = (1 / abs(p[var])) * p + (1 / abs(q[var])) * q;
                comb[var] = 0;
                next.push_back(std::move(comb));
            }
        }
        for (auto& r : next) normalize(r);
        std::sort(next.begin(), next.end(), LexLess{});
        next.erase(std::unique(next.begin(), next.end()), next.end());
        rows = std::move(next);
    }
    // all variables eliminated: any remaining row reads 0 > 0
    return rows.empty();
}

} // namespace

bool sign_map_realizable(const RootSystem& rs, const std::vector<int>& signs)
{
    const std::size_t n = rs.dim();
    if (signs.size() != rs.roots().size()) throw ParameterError("sign map has wrong length");
    std::vector<QVector> eq;
    for (std::size_t i = 0; i < signs.size(); ++i) {
        if (signs[i] != -signs[rs.negative_of(i)]) return false;
        if (signs[i] == 0) eq.push_back(rs.roots()[i].coords);
    }
    // restrict to the solution space of the equalities: H = N^T y
    QMatrix nsp = nullspace(QMatrix::from_rows(eq, n));
    std::vector<QVector> strict;
    for (std::size_t i = 0; i < signs.size(); ++i) {
        if (signs[i] <= 0) continue;
        strict.push_back(nsp * rs.roots()[i].coords);
    }
    return strict_feasible(std::move(strict), nsp.rows());
}

SignFaceTable sign_faces(const RootSystem& rs, std::size_t rank_cap)
{
    if (rs.rank() > rank_cap)
        throw ResourceError("sign-map enumeration rank " + std::to_string(rs.rank()) + " exceeds cap " +
                            std::to_string(rank_cap));
    const std::size_t np = rs.positive_count();
    const std::size_t nr = rs.roots().size();

    std::vector<std::vector<int>> found;
    // DFS over the positive roots; prune as soon as the partial system is infeasible.
    auto feasible_prefix = [&](const std::vector<int>& pre) {
        std::vector<QVector> eq;
        std::vector<QVector> strict;
        for (std::size_t i = 0; i < pre.size(); ++i) {
            if (pre[i] == 0) eq.push_back(rs.roots()[i].coords);
        }
        QMatrix nsp = nullspace(QMatrix::from_rows(eq, rs.dim()));
        for (std::size_t i = 0; i < pre.size(); ++i)
            if (pre[i] != 0) strict.push_back(Rational(pre[i]) * (nsp * rs.roots()[i].coords));
        return strict_feasible(std::move(strict), nsp.rows());
    };
    std::vector<std::vector<int>> stack{{}};
    while (!stack.empty()) {
        auto pre = std::move(stack.back());
        stack.pop_back();
        if (pre.size() == np) {
            std::vector<int> full(nr);
            for (std::size_t i = 0; i < np; ++i) {
                full[i] = pre[i];
                full[rs.negative_of(i)] = -pre[i];
            }
            found.push_back(std::move(full));
            continue;
        }
        // pushed in reverse so that +, 0, - are visited in that order
        for (int s : {-1, 0, 1}) {
            auto next = pre;
            next.push_back(s);
            if (feasible_prefix(next)) stack.push_back(std::move(next));
        }
    }

    SignFaceTable table;
    for (auto& s : found) table.faces.push_back({std::move(s), true, 0, false});

    std::map<std::vector<int>, std::size_t> where;
    for (std::size_t f = 0; f < table.faces.size(); ++f) where[table.faces[f].signs] = f;

    std::vector<std::vector<std::size_t>> perms;
    for (const auto& w : weyl_group(rs)) perms.push_back(root_permutation(rs, w));

    std::vector<bool> assigned(table.faces.size(), false);
    for (std::size_t f = 0; f < table.faces.size(); ++f) {
        if (assigned[f]) continue;
        const std::size_t orbit = table.orbit_count++;
        std::optional<std::size_t> rep;
        for (const auto& perm : perms) {
            std::vector<int> img(nr);
            for (std::size_t i = 0; i < nr; ++i) img[perm[i]] = table.faces[f].signs[i];
            auto it = where.find(img);
            if (it == where.end()) throw InternalError("Weyl image of a face is not a face");
            const std::size_t g = it->second;
            if (assigned[g]) continue;
            assigned[g] = true;
            table.faces[g].orbit = orbit;
            bool nonneg = true;
            for (std::size_t i = 0; i < np; ++i) nonneg = nonneg && img[i] >= 0;
            if (nonneg) {
                if (rep) throw InternalError("orbit has two nonnegative representatives");
                rep = g;
            }
        }
        if (!rep) throw InternalError("orbit has no nonnegative representative");
        table.faces[*rep].representative = true;
        table.representatives.push_back(*rep);
    }
    return table;
}

std::vector<BoundaryFaceRecord> face_correspondence(const RootSystem& rs, const WallLattice& lat)
{
    std::vector<BoundaryFaceRecord> out;
    for (std::size_t b = 0; b < lat.size(); ++b) {
        if (b == lat.star()) continue;
        BoundaryFaceRecord r;
        r.b = b;
        r.label = "F_" + std::to_string(b);
        r.fiber_dim = rs.dim() - lat.dim(b);
        r.base_dim = lat.dim(b) - 1;
        r.fibration = "fiber = compactified S^" + std::to_string(b) + " (dim " + std::to_string(r.fiber_dim) +
                      "), base = lift of C_" + std::to_string(b) + " (sphere of dim " +
                      std::to_string(r.base_dim) + ")";
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace radialspec
