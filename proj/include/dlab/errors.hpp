#pragma once

#include <stdexcept>
#include <string>

namespace dlab {

// Input outside an operation's mathematical domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Request exceeds a configured size or memory cap.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Integer result does not fit the 64-bit range.
class ArithmeticError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

// Non-finite intermediate in a floating-point computation.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace dlab
