#pragma once

#include <stdexcept>
#include <string>

namespace stringlab {

// Input/configuration problems: bad parameters, malformed files, violated
// preconditions. Maps to CLI exit code 2.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failures: non-converged roots, singular systems, tolerance
// violations discovered mid-computation. Maps to CLI exit code 3.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace stringlab
