#include "radialspec/errors.hpp"

namespace radialspec {

DiscretizationError::DiscretizationError(std::size_t node, const std::string& what)
    : Error("discretization", what + " (node " + std::to_string(node) + ")"), node_(node) {}

} // namespace radialspec
