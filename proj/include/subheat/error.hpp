#pragma once

#include <stdexcept>
#include <string>

namespace subheat {

// Violated precondition on user-supplied parameters (bad grid size, alpha out
// of range, malformed config). The CLI maps these to exit code 2.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A numerical procedure could not deliver its contract (bisection did not
// converge, eigensolver failed, quadrature range does not bracket the mass).
// The CLI maps these to exit code 1.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

[[noreturn]] inline void fail_config(const std::string& where, const std::string& what) {
    throw ConfigError(where + ": " + what);
}

[[noreturn]] inline void fail_numerical(const std::string& where, const std::string& what) {
    throw NumericalError(where + ": " + what);
}

}  // namespace subheat
