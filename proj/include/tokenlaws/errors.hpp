#pragma once

#include <stdexcept>
#include <string>

namespace tokenlaws {

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad input: unreadable files, malformed records, values outside their
// declared ranges. Maps to CLI exit code 1.
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// Degenerate or numerically unusable data: empty distributions, zero
// variance, tails too small to fit. Maps to CLI exit code 2.
class NumericError : public Error {
public:
    explicit NumericError(const std::string& msg) : Error(msg) {}
};

}  // namespace tokenlaws
