#ifndef AKMS_ERROR_HPP
#define AKMS_ERROR_HPP

#include <stdexcept>
#include <string>

namespace akms {

/// Invalid argument outside the mathematical domain of an operation.
class domain_error : public std::invalid_argument {
public:
    explicit domain_error(const std::string& msg) : std::invalid_argument(msg) {}
};

/// A series or iteration failed to reach the requested tolerance.
/// Carries the partial value accumulated so far.
class convergence_error : public std::runtime_error {
public:
    convergence_error(const std::string& msg, double partial, double residual)
        : std::runtime_error(msg), partial_value(partial), residual_estimate(residual) {}

    double partial_value;
    double residual_estimate;
};

/// Generic numeric failure (bracketing, quadrature breakdown, ...).
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace akms

#endif
