#pragma once

#include <stdexcept>
#include <string>

namespace rangeopt {

// Malformed input data or bad argument values. The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// A configuration the library deliberately does not offer
// (e.g. non-discrete cover with outliers). CLI exit code 3.
class UnsupportedError : public std::runtime_error {
public:
    explicit UnsupportedError(const std::string& msg) : std::runtime_error(msg) {}
};

// An exact oracle was asked to enumerate beyond its instance-size budget.
// Oracles refuse instead of silently approximating. CLI exit code 3.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace rangeopt
