#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace radialspec {

/// Base of every error raised by the library. `kind()` is the stable
/// machine-readable tag used in CLI error payloads.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

/// Invalid constructor or option value (n = 0, m = 0, h <= 0, ...).
class ParameterError : public Error {
public:
    explicit ParameterError(const std::string& what) : Error("parameter", what) {}
};

/// Input outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error("domain", what) {}
};

/// A configured size cap was exceeded.
class ResourceError : public Error {
public:
    explicit ResourceError(const std::string& what) : Error("resource", what) {}
};

class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what) : Error("numerical", what) {}
};

/// Stencil coefficient at a grid node was not finite.
class DiscretizationError : public Error {
public:
    DiscretizationError(std::size_t node, const std::string& what);

    std::size_t node() const noexcept { return node_; }

private:
    std::size_t node_;
};

/// A checked invariant failed; indicates a bug rather than bad input.
class InternalError : public Error {
public:
    explicit InternalError(const std::string& what) : Error("internal", what) {}
};

} // namespace radialspec
