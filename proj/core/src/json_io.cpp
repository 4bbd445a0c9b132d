#include "radialspec/json_io.hpp"

#include "radialspec/errors.hpp"

#include <fstream>
#include <sstream>

namespace radialspec {

Json rational_json(const Rational& q) { return to_string(q); }

Json vector_json(const QVector& v)
{
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

Json matrix_json(const QMatrix& m)
{
    Json a = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(vector_json(m.row(i)));
    return a;
}

Rational rational_from_json(const Json& j)
{
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw ParameterError("expected a rational as \"p/q\" string or integer, got " + j.dump());
}

QVector vector_from_json(const Json& j)
{
    if (!j.is_array()) throw ParameterError("expected an array of rationals");
    QVector v;
    for (const auto& x : j) v.push_back(rational_from_json(x));
    return v;
}

Json to_json(const RootSystem& rs)
{
    Json j;
    j["dim"] = rs.dim();
    j["gram"] = matrix_json(rs.space().gram());
    Json roots = Json::array();
    for (std::size_t i = 0; i < rs.roots().size(); ++i) {
        Json r;
        r["coords"] = vector_json(rs.roots()[i].coords);
        r["mult"] = rs.roots()[i].mult;
        r["positive"] = rs.is_positive(i);
        roots.push_back(std::move(r));
    }
    j["roots"] = std::move(roots);
    j["simples"] = rs.simples();
    j["normalization"] = to_string(rs.normalization());
    return j;
}

RootSystem root_system_from_json(const Json& j)
{
    try {
        if (!j.is_object()) throw ParameterError("root system must be a JSON object");
        const std::size_t n = j.at("dim").get<std::size_t>();
        const Json& g = j.at("gram");
        QMatrix gram(n, n);
        if (g.size() == n * n && (n == 0 || !g[0].is_array())) {
            for (std::size_t k = 0; k < n * n; ++k) gram(k / n, k % n) = rational_from_json(g[k]);
        } else {
            if (g.size() != n) throw ParameterError("gram has wrong number of rows");
            for (std::size_t i = 0; i < n; ++i) {
                QVector row = vector_from_json(g[i]);
                if (row.size() != n) throw ParameterError("gram row has wrong length");
                for (std::size_t k = 0; k < n; ++k) gram(i, k) = row[k];
            }
        }
        std::vector<Root> roots;
        std::vector<bool> positive;
        for (const auto& r : j.at("roots")) {
            roots.push_back({vector_from_json(r.at("coords")), r.at("mult").get<int>()});
            positive.push_back(r.at("positive").get<bool>());
        }
        auto simples = j.at("simples").get<std::vector<std::size_t>>();
        Normalization norm = Normalization::custom;
        if (j.contains("normalization")) norm = parse_normalization(j.at("normalization").get<std::string>());
        return RootSystem(AmbientSpace(gram), std::move(roots), std::move(positive), std::move(simples), norm);
    } catch (const nlohmann::json::exception& e) {
        throw ParameterError(std::string("malformed root system JSON: ") + e.what());
    }
}

RootSystem load_root_system(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open '" + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParameterError("'" + path + "' is not valid JSON: " + e.what());
    }
    return root_system_from_json(j);
}

void save_root_system(const RootSystem& rs, const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw ParameterError("cannot write '" + path + "'");
    out << to_json(rs).dump(2) << '\n';
}

Json subsystem_json(const SubsystemData& s)
{
    Json j;
    j["type"] = s.type;
    j["roots"] = s.roots;
    j["rho_b"] = vector_json(s.rho_b);
    j["rho_diff"] = vector_json(s.rho_diff);
    j["norms"] = {{"rho_b", to_string(s.rho_b_norm2)}, {"rho_diff", to_string(s.rho_diff_norm2)}};
    j["face"] = s.face;
    j["orthogonal_split"] = s.orthogonal_split;
    j["perp_basis"] = matrix_json(s.s_perp);
    j["system"] = to_json(s.system);
    return j;
}

Json lattice_json(const RootSystem& rs, const WallLattice& lat)
{
    Json a = Json::array();
    for (std::size_t b = 0; b < lat.size(); ++b) {
        Json e;
        e["index"] = b;
        e["dim"] = lat.dim(b);
        e["basis"] = matrix_json(lat.basis(b));
        e["contains"] = lat.contains(b);
        if (b != lat.star()) e["subsystem"] = subsystem_json(subsystem(rs, lat, b));
        a.push_back(std::move(e));
    }
    return a;
}

} // namespace radialspec
