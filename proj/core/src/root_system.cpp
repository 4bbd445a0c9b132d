#include "radialspec/root_system.hpp"

#include "radialspec/errors.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace radialspec {

AmbientSpace::AmbientSpace(QMatrix gram) : gram_(std::move(gram))
{
    if (!gram_.is_square()) throw ParameterError("gram matrix must be square");
    if (!gram_.is_symmetric()) throw ParameterError("gram matrix must be symmetric");
    if (!is_positive_definite(gram_)) throw ParameterError("gram matrix must be positive definite");
    dual_gram_ = *inverse(gram_);
}

Rational AmbientSpace::inner(const QVector& x, const QVector& y) const { return dot(x, gram_ * y); }

Rational AmbientSpace::dual_inner(const QVector& a, const QVector& b) const
{
    return dot(a, dual_gram_ * b);
}

QVector AmbientSpace::metric_dual(const QVector& covector) const { return dual_gram_ * covector; }

std::string to_string(Normalization n)
{
    switch (n) {
    case Normalization::trace_form: return "trace_form";
    case Normalization::unit_root: return "unit_root";
    case Normalization::killing_form: return "killing_form";
    case Normalization::custom: return "custom";
    }
    return "custom";
}

Normalization parse_normalization(const std::string& s)
{
    if (s == "trace_form") return Normalization::trace_form;
    if (s == "unit_root") return Normalization::unit_root;
    if (s == "killing_form") return Normalization::killing_form;
    if (s == "custom") return Normalization::custom;
    throw ParameterError("unknown normalization '" + s + "'");
}

namespace {

bool is_integer(const Rational& q) { return q.get_den() == 1; }

// s_alpha(beta) = beta - 2 <beta, alpha> / <alpha, alpha> alpha, in the dual metric.
QVector reflect_covector(const AmbientSpace& sp, const QVector& alpha, const QVector& beta)
{
    Rational c = 2 * sp.dual_inner(beta, alpha) / sp.dual_inner(alpha, alpha);
    return beta - c * alpha;
}

} // namespace

RootSystem::RootSystem(AmbientSpace space, std::vector<Root> roots, std::vector<bool> positive,
                       std::vector<std::size_t> simples, Normalization normalization)
    : space_(std::move(space)), normalization_(normalization)
{
    const std::size_t n = space_.dim();
    if (positive.size() != roots.size())
        throw ParameterError("positive flags do not match the root list");

    for (const auto& r : roots) {
        if (r.coords.size() != n) throw ParameterError("root has wrong number of coordinates");
        if (is_zero(r.coords)) throw ParameterError("zero vector is not a root");
        if (r.mult < 1) throw ParameterError("root multiplicity must be >= 1");
    }
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            if (roots[i].coords == roots[j].coords) throw ParameterError("duplicate root");

    auto index_of = [&](const QVector& c) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < roots.size(); ++i)
            if (roots[i].coords == c) return i;
        return std::nullopt;
    };

    // Lambda = Lambda+ disjoint union -Lambda+, with matching multiplicities.
    for (std::size_t i = 0; i < roots.size(); ++i) {
        auto j = index_of(-roots[i].coords);
        if (!j) throw ParameterError("root set is not symmetric under negation");
        if (positive[i] == positive[*j]) throw ParameterError("exactly one of +-alpha must be positive");
        if (roots[i].mult != roots[*j].mult) throw ParameterError("mult(-alpha) differs from mult(alpha)");
    }

    // Simples: positive, independent, spanning the root span.
    std::vector<QVector> simple_rows;
    for (auto s : simples) {
        if (s >= roots.size()) throw ParameterError("simple root index out of range");
        if (!positive[s]) throw ParameterError("simple roots must be positive");
        simple_rows.push_back(roots[s].coords);
    }
    std::vector<QVector> all_rows;
    for (const auto& r : roots) all_rows.push_back(r.coords);
    const std::size_t span_rank = radialspec::rank(QMatrix::from_rows(all_rows, n));
    if (radialspec::rank(QMatrix::from_rows(simple_rows, n)) != simple_rows.size())
        throw ParameterError("simple roots are linearly dependent");
    if (simple_rows.size() != span_rank)
        throw ParameterError("simple roots do not span the root span");

    // Integrality and sign of simple-root expansions.
    std::vector<QVector> expansions(roots.size());
    for (std::size_t i = 0; i < roots.size(); ++i) {
        auto c = combination_of(simple_rows, roots[i].coords);
        if (!c) throw ParameterError("root is not in the span of the simple roots");
        for (const auto& x : *c) {
            if (!is_integer(x)) throw ParameterError("root is not an integer combination of simples");
            if (positive[i] ? sgn(x) < 0 : sgn(x) > 0)
                throw ParameterError("positive root with a negative simple-root coefficient");
        }
        expansions[i] = std::move(*c);
    }

    // Reflection closure with multiplicities.
    for (const auto& a : roots) {
        for (const auto& b : roots) {
            auto j = index_of(reflect_covector(space_, a.coords, b.coords));
            if (!j) throw ParameterError("root set is not closed under reflections");
            if (roots[*j].mult != b.mult) throw ParameterError("reflection does not preserve multiplicity");
        }
    }

    // Canonical order.
    std::vector<std::size_t> pos_idx;
    for (std::size_t i = 0; i < roots.size(); ++i)
        if (positive[i]) pos_idx.push_back(i);
    std::sort(pos_idx.begin(), pos_idx.end(), [&](std::size_t x, std::size_t y) {
        return lex_compare(expansions[x], expansions[y]) > 0;
    });
    std::vector<std::size_t> order = pos_idx;
    for (auto i : pos_idx) order.push_back(*index_of(-roots[i].coords));

    std::vector<std::size_t> new_index(roots.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        new_index[order[k]] = k;
        roots_.push_back(roots[order[k]]);
        simple_coords_.push_back(expansions[order[k]]);
    }
    for (auto s : simples) simples_.push_back(new_index[s]);
}

RootSystem RootSystem::point()
{
    return RootSystem(AmbientSpace(QMatrix()), {}, {}, {}, Normalization::custom);
}

std::size_t RootSystem::negative_of(std::size_t i) const noexcept
{
    const std::size_t p = positive_count();
    return i < p ? i + p : i - p;
}

std::optional<std::size_t> RootSystem::find(const QVector& coords) const
{
    for (std::size_t i = 0; i < roots_.size(); ++i)
        if (roots_[i].coords == coords) return i;
    return std::nullopt;
}

RootSystem RootSystem::change_basis(const QMatrix& basis_change) const
{
    if (basis_change.rows() != dim() || !basis_change.is_square())
        throw ParameterError("basis change has wrong shape");
    if (!inverse(basis_change)) throw ParameterError("basis change is singular");
    QMatrix gram = basis_change.transpose() * space_.gram() * basis_change;
    QMatrix pt = basis_change.transpose();
    std::vector<Root> roots;
    std::vector<bool> positive;
    for (std::size_t i = 0; i < roots_.size(); ++i) {
        roots.push_back({pt * roots_[i].coords, roots_[i].mult});
        positive.push_back(is_positive(i));
    }
    return RootSystem(AmbientSpace(gram), std::move(roots), std::move(positive), simples_, normalization_);
}

bool operator==(const RootSystem& a, const RootSystem& b)
{
    if (!(a.space_.gram() == b.space_.gram())) return false;
    if (a.roots_.size() != b.roots_.size() || a.simples_ != b.simples_) return false;
    for (std::size_t i = 0; i < a.roots_.size(); ++i)
        if (a.roots_[i].coords != b.roots_[i].coords || a.roots_[i].mult != b.roots_[i].mult) return false;
    return a.normalization_ == b.normalization_;
}

// --- families -----------------------------------------------------------------

RootSystem a_series(int n)
{
    if (n < 1) throw ParameterError("A_series requires n >= 1");
    const std::size_t dim = static_cast<std::size_t>(n);
    QMatrix gram(dim, dim);
    for (std::size_t k = 0; k < dim; ++k) {
        gram(k, k) = 2;
        if (k + 1 < dim) gram(k, k + 1) = gram(k + 1, k) = -1;
    }
    // t_i evaluated on h_k = E_kk - E_{k+1,k+1}.
    auto t = [&](std::size_t i) {
        QVector v(dim, Rational(0));
        if (i < dim) v[i] += 1;
        if (i >= 1) v[i - 1] -= 1;
        return v;
    };
    std::vector<Root> roots;
    std::vector<bool> positive;
    std::vector<std::size_t> simples;
    for (std::size_t i = 0; i <= dim; ++i) {
        for (std::size_t j = 0; j <= dim; ++j) {
            if (i == j) continue;
            if (i < j && j == i + 1) simples.push_back(roots.size());
            roots.push_back({t(i) - t(j), 1});
            positive.push_back(i < j);
        }
    }
    return RootSystem(AmbientSpace(gram), std::move(roots), std::move(positive), std::move(simples),
                      Normalization::trace_form);
}

RootSystem rank_one(int m)
{
    if (m < 1) throw ParameterError("rank_one requires multiplicity m >= 1");
    QMatrix gram(1, 1);
    gram(0, 0) = 1;
    return RootSystem(AmbientSpace(gram), {{{Rational(1)}, m}, {{Rational(-1)}, m}}, {true, false}, {0},
                      Normalization::unit_root);
}

RootSystem flat_factor(int d)
{
    if (d < 1) throw ParameterError("flat factor requires d >= 1");
    return RootSystem(AmbientSpace(QMatrix::identity(static_cast<std::size_t>(d))), {}, {}, {},
                      Normalization::custom);
}

RootSystem product(const std::vector<RootSystem>& factors)
{
    if (factors.empty()) throw ParameterError("product of no factors");
    std::size_t dim = 0;
    for (const auto& f : factors) dim += f.dim();

    QMatrix gram(dim, dim);
    std::vector<Root> roots;
    std::vector<bool> positive;
    std::vector<std::size_t> simples;
    std::optional<Normalization> norm;
    bool mixed = false;

    std::size_t offset = 0;
    for (const auto& f : factors) {
        const std::size_t d = f.dim();
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) gram(offset + i, offset + j) = f.space().gram()(i, j);
        const std::size_t base = roots.size();
        for (std::size_t k = 0; k < f.roots().size(); ++k) {
            QVector c(dim, Rational(0));
            for (std::size_t i = 0; i < d; ++i) c[offset + i] = f.roots()[k].coords[i];
            roots.push_back({std::move(c), f.roots()[k].mult});
            positive.push_back(f.is_positive(k));
        }
        for (auto s : f.simples()) simples.push_back(base + s);
        if (!f.roots().empty()) {
            if (norm && *norm != f.normalization()) mixed = true;
            norm = f.normalization();
        }
        offset += d;
    }
    Normalization result = (!norm || mixed) ? Normalization::custom : *norm;
    return RootSystem(AmbientSpace(gram), std::move(roots), std::move(positive), std::move(simples), result);
}

// --- operations -----------------------------------------------------------------

QVector rho(const RootSystem& rs)
{
    QVector r(rs.dim(), Rational(0));
    for (std::size_t i = 0; i < rs.positive_count(); ++i)
        r = r + Rational(rs.roots()[i].mult, 2) * rs.roots()[i].coords;
    return r;
}

Rational rho_norm2(const RootSystem& rs)
{
    QVector r = rho(rs);
    return rs.space().dual_inner(r, r);
}

QVector root_vector(const RootSystem& rs, const QVector& alpha)
{
    if (!rs.find(alpha)) throw DomainError("covector is not a root of the system");
    return rs.space().metric_dual(alpha);
}

WeylElement::WeylElement(QMatrix matrix) : matrix_(std::move(matrix))
{
    auto inv = inverse(matrix_);
    if (!inv) throw InternalError("Weyl element is not invertible");
    dual_ = inv->transpose();
}

QVector WeylElement::act(const QVector& vector) const { return matrix_ * vector; }

QVector WeylElement::act_dual(const QVector& covector) const { return dual_ * covector; }

WeylElement WeylElement::compose(const WeylElement& rhs) const { return WeylElement(matrix_ * rhs.matrix_); }

WeylElement reflection(const RootSystem& rs, std::size_t root_index)
{
    const auto& alpha = rs.roots().at(root_index).coords;
    const auto& sp = rs.space();
    QVector h = sp.metric_dual(alpha);
    Rational c = Rational(2) / sp.dual_inner(alpha, alpha);
    QMatrix m = QMatrix::identity(rs.dim());
    for (std::size_t i = 0; i < rs.dim(); ++i)
        for (std::size_t j = 0; j < rs.dim(); ++j) m(i, j) -= c * h[i] * alpha[j];
    return WeylElement(std::move(m));
}

std::vector<WeylElement> weyl_group(const RootSystem& rs, std::size_t cap)
{
    std::vector<QMatrix> gens;
    for (auto s : rs.simples()) gens.push_back(reflection(rs, s).matrix());

    std::set<QMatrix, LexLess> seen;
    std::deque<QMatrix> queue;
    QMatrix id = QMatrix::identity(rs.dim());
    seen.insert(id);
    queue.push_back(id);
    while (!queue.empty()) {
        QMatrix g = std::move(queue.front());
        queue.pop_front();
        for (const auto& s : gens) {
            QMatrix next = s * g;
            if (seen.insert(next).second) {
                if (seen.size() > cap)
                    throw ResourceError("Weyl group closure exceeds cap of " + std::to_string(cap));
                queue.push_back(std::move(next));
            }
        }
    }
    std::vector<WeylElement> out;
    out.reserve(seen.size());
    for (const auto& m : seen) out.emplace_back(m);
    return out;
}

std::vector<std::size_t> root_permutation(const RootSystem& rs, const WeylElement& w)
{
    std::vector<std::size_t> perm(rs.roots().size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
        auto j = rs.find(w.act_dual(rs.roots()[i].coords));
        if (!j) throw InternalError("Weyl element does not permute the roots");
        perm[i] = *j;
    }
    return perm;
}

RootSystem essential_part(const RootSystem& rs)
{
    if (rs.spans()) return rs;
    if (rs.rank() == 0) return RootSystem::point();
    std::vector<QVector> h;
    for (auto s : rs.simples()) h.push_back(rs.space().metric_dual(rs.roots()[s].coords));
    QMatrix c = row_basis(QMatrix::from_rows(h, rs.dim()));
    QMatrix gram = c * rs.space().gram() * c.transpose();
    std::vector<Root> roots;
    std::vector<bool> positive;
    for (std::size_t i = 0; i < rs.roots().size(); ++i) {
        roots.push_back({c * rs.roots()[i].coords, rs.roots()[i].mult});
        positive.push_back(rs.is_positive(i));
    }
    return RootSystem(AmbientSpace(gram), std::move(roots), std::move(positive), rs.simples(),
                      rs.normalization());
}

std::vector<QVector> dual_basis(const RootSystem& rs)
{
    if (!rs.spans()) throw DomainError("simple roots do not span the dual of a");
    std::vector<QVector> rows;
    for (auto s : rs.simples()) rows.push_back(rs.roots()[s].coords);
    QMatrix inv = *inverse(QMatrix::from_rows(rows, rs.dim()));
    std::vector<QVector> k;
    for (std::size_t j = 0; j < rs.dim(); ++j) k.push_back(inv.col(j));
    return k;
}

namespace {

// Gamma_pq = <alpha_p, alpha_q> over the simples.
QMatrix simple_gram(const RootSystem& rs)
{
    const auto& s = rs.simples();
    QMatrix g(s.size(), s.size());
    for (std::size_t p = 0; p < s.size(); ++p)
        for (std::size_t q = 0; q < s.size(); ++q)
            g(p, q) = rs.space().dual_inner(rs.roots()[s[p]].coords, rs.roots()[s[q]].coords);
    return g;
}

} // namespace

std::string canonical_key(const RootSystem& rs)
{
    const std::size_t r = rs.rank();
    const QMatrix coweight_gram = *inverse(simple_gram(rs));

    std::vector<std::size_t> perm(r);
    std::iota(perm.begin(), perm.end(), 0);
    std::string best;
    bool first = true;
    do {
        std::ostringstream os;
        os << "flat=" << (rs.dim() - r) << ";rank=" << r << ";gram=";
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) os << to_string(coweight_gram(perm[i], perm[j])) << ',';
        std::vector<std::string> items;
        for (std::size_t k = 0; k < rs.positive_count(); ++k) {
            std::ostringstream it;
            const auto& c = rs.simple_coordinates(k);
            for (std::size_t i = 0; i < r; ++i) it << to_string(c[perm[i]]) << ' ';
            it << 'm' << rs.roots()[k].mult;
            items.push_back(it.str());
        }
        std::sort(items.begin(), items.end());
        os << ";roots=";
        for (const auto& it : items) os << '[' << it << ']';
        std::string key = os.str();
        if (first || key < best) best = std::move(key);
        first = false;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

namespace {

std::string component_label(const RootSystem& rs, const std::vector<std::size_t>& comp)
{
    const std::size_t k = comp.size();
    std::set<std::size_t> in(comp.begin(), comp.end());
    std::size_t npos = 0;
    bool has_double = false;
    std::map<Rational, std::size_t> lengths;
    for (std::size_t i = 0; i < rs.positive_count(); ++i) {
        const auto& c = rs.simple_coordinates(i);
        bool inside = false;
        for (std::size_t j = 0; j < c.size(); ++j)
            if (sgn(c[j]) != 0) inside = in.count(j) > 0;
        if (!inside) continue;
        ++npos;
        // a root whose half is also a root
        QVector half = Rational(1, 2) * rs.roots()[i].coords;
        if (rs.find(half)) has_double = true;
        ++lengths[rs.space().dual_inner(rs.roots()[i].coords, rs.roots()[i].coords)];
    }
    const std::string ks = std::to_string(k);
    if (has_double) return "BC" + ks;
    if (npos == k * (k + 1) / 2 && lengths.size() == 1) return "A" + ks;
    if (k == 2 && npos == 6) return "G2";
    if (k == 4 && npos == 24 && lengths.size() == 2) return "F4";
    if (npos == k * k && lengths.size() == 2) {
        // B_k: k short positive roots; C_k: k long positive roots
        std::size_t short_count = lengths.begin()->second;
        return (short_count == k ? "B" : "C") + ks;
    }
    if (npos == k * (k - 1) && lengths.size() == 1) return "D" + ks;
    if (npos == 36 && k == 6) return "E6";
    if (npos == 63 && k == 7) return "E7";
    if (npos == 120 && k == 8) return "E8";
    return "X" + ks;
}

} // namespace

std::string type_label(const RootSystem& rs)
{
    const std::size_t r = rs.rank();
    QMatrix g = simple_gram(rs);

    // connected components of the Dynkin graph
    std::vector<int> comp_id(r, -1);
    std::vector<std::vector<std::size_t>> comps;
    for (std::size_t s = 0; s < r; ++s) {
        if (comp_id[s] >= 0) continue;
        comps.emplace_back();
        std::vector<std::size_t> stack{s};
        comp_id[s] = static_cast<int>(comps.size() - 1);
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            comps.back().push_back(v);
            for (std::size_t u = 0; u < r; ++u) {
                if (comp_id[u] < 0 && sgn(g(v, u)) != 0) {
                    comp_id[u] = comp_id[s];
                    stack.push_back(u);
                }
            }
        }
    }
    std::vector<std::string> labels;
    for (auto& c : comps) {
        std::sort(c.begin(), c.end());
        labels.push_back(component_label(rs, c));
    }
    // larger rank first, then by name
    std::sort(labels.begin(), labels.end(), [](const std::string& a, const std::string& b) {
        auto rank_of = [](const std::string& s) {
            auto p = s.find_first_of("0123456789");
            return std::stoi(s.substr(p));
        };
        if (rank_of(a) != rank_of(b)) return rank_of(a) > rank_of(b);
        return a < b;
    });
    std::string out;
    const std::size_t flat = rs.dim() - r;
    if (flat > 0) out = "R^" + std::to_string(flat);
    for (const auto& l : labels) {
        if (!out.empty()) out += " x ";
        out += l;
    }
    return out;
}

} // namespace radialspec
