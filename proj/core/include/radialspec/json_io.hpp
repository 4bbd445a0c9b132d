#pragma once

#include "radialspec/root_system.hpp"
#include "radialspec/wall_lattice.hpp"

#include <json.hpp>

#include <string>

namespace radialspec {

using Json = nlohmann::ordered_json;

Json rational_json(const Rational& q);
Json vector_json(const QVector& v);
Json matrix_json(const QMatrix& m);
Rational rational_from_json(const Json& j);
QVector vector_from_json(const Json& j);

/// {dim, gram, roots: [{coords, mult, positive}], simples, normalization}.
/// Rationals are "p/q" strings. Roots are written in canonical order.
Json to_json(const RootSystem& rs);
/// Accepts the format written by to_json; the gram may also be given as a flat
/// row-major list, and rationals as JSON integers. ParameterError on bad input.
RootSystem root_system_from_json(const Json& j);

RootSystem load_root_system(const std::string& path);
void save_root_system(const RootSystem& rs, const std::string& path);

/// [{index, dim, basis, contains, subsystem: {...}}]; subsystem omitted at *.
Json lattice_json(const RootSystem& rs, const WallLattice& lat);
Json subsystem_json(const SubsystemData& s);

} // namespace radialspec
