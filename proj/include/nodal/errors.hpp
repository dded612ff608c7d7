#pragma once

#include <stdexcept>
#include <string>

namespace nodal {

/// Two values with different truncation orders were combined.
struct OrderMismatchError : std::invalid_argument {
    explicit OrderMismatchError(const std::string& what) : std::invalid_argument(what) {}
};

/// An operation was applied outside its domain (nonzero constant term,
/// wrong valuation, wrong degree, ...).
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A value did not have the structural shape an operation requires.
struct ShapeError : std::invalid_argument {
    explicit ShapeError(const std::string& what) : std::invalid_argument(what) {}
};

/// Values belonging to different algebra contexts were mixed.
struct ContextMismatchError : std::invalid_argument {
    explicit ContextMismatchError(const std::string& what) : std::invalid_argument(what) {}
};

/// A structure failed its construction-time certification.
struct ConsistencyError : std::runtime_error {
    explicit ConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed textual or JSON input.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace nodal
