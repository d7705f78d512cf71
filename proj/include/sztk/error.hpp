#pragma once

#include <stdexcept>
#include <string>

namespace sztk {

/// Bad input: malformed files, violated preconditions, broken invariants of
/// user-supplied data.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical stage did not produce a usable answer (LP not optimal,
/// an internal certificate failed).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace sztk
