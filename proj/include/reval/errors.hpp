#pragma once

#include <stdexcept>
#include <string>

namespace reval {

/// Malformed input: bad UTF-8, unparsable files, wrong headers, bad arguments.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Cross-artifact inconsistency, e.g. a record that references a tweet with no embedding.
class IntegrityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Data that cannot produce a defined result, e.g. a zero-length centroid sum.
class DegenerateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside an operation's domain (dimension mismatch, fraction outside (0,1), ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace reval
