#pragma once

#include <stdexcept>
#include <string>

namespace sphtrop {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Mismatched ambient dimensions between operands.
class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

/// Input violates a documented precondition of an operation.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

/// Raised by the toric fan builder when the colored fan is not polyhedral,
/// i.e. no toric embedding exists.
class NonPolyhedralFan : public Error {
public:
    explicit NonPolyhedralFan(const std::string& what) : Error(what) {}
};

/// Malformed problem/result files or JSON payloads.
class SchemaError : public Error {
public:
    explicit SchemaError(const std::string& what) : Error(what) {}
};

} // namespace sphtrop
