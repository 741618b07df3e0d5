#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sodia {

/// A broken invariant, reported as data. `entity` names the offending object
/// (e.g. "contact:c3", "edge:c1-c2"), `rule` is a stable upper-case token.
struct Violation {
    std::string entity;
    std::string rule;
    std::string detail;

    bool operator==(const Violation&) const = default;
};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An id that does not resolve (unknown sector, version, contact, lane, case).
class InvalidReference : public Error {
public:
    using Error::Error;
};

/// Input outside the domain of a geometric or numeric operation.
class OutOfDomain : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<Violation> violations);
    ValidationError(std::string message, std::vector<Violation> violations);

    const std::vector<Violation>& violations() const noexcept { return violations_; }

private:
    std::vector<Violation> violations_;
};

/// Semantically impossible request (deleting a standard lane, a lane that still holds events).
class Unprocessable : public Error {
public:
    using Error::Error;
};

/// Optimistic-concurrency failure: the caller's expected revision is stale.
class Conflict : public Error {
public:
    Conflict(std::string message, std::int64_t current_revision)
        : Error(std::move(message)), current_revision_(current_revision) {}

    std::int64_t current_revision() const noexcept { return current_revision_; }

private:
    std::int64_t current_revision_;
};

// Document loading failures, each distinguishable by type.

class MalformedDocument : public Error {
public:
    using Error::Error;
};

class UnsupportedSchema : public Error {
public:
    UnsupportedSchema(std::string message, std::int64_t found)
        : Error(std::move(message)), found_(found) {}

    std::int64_t found() const noexcept { return found_; }

private:
    std::int64_t found_;
};

class InvalidDocument : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace sodia
