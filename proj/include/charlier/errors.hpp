#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace charlier {

// Base class for every failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid arguments: parameters outside their admissible range,
// Gamma poles, malformed decimal strings.
class DomainError : public Error {
public:
    using Error::Error;
};

// A precision certificate could not be established at the allowed
// working precision. Retrying with more bits usually helps.
class PrecisionError : public Error {
public:
    using Error::Error;
};

// Division by a quantity that vanished to working precision
// (recursion denominators, Baecklund maps, movable poles).
class SingularityError : public Error {
public:
    using Error::Error;
};

// The ODE integrator stopped before the requested end point because the
// solution approached a pole or one of the excluded values y = 0, y = 1.
class IntegrationError : public SingularityError {
public:
    IntegrationError(const std::string& what, std::string last_good_t)
        : SingularityError(what + " (last good t = " + last_good_t + ")"), last_good_t_(std::move(last_good_t))
    {
    }
    [[nodiscard]] const std::string& last_good_t() const { return last_good_t_; }

private:
    std::string last_good_t_;
};

} // namespace charlier
