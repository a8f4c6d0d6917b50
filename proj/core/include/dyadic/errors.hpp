#pragma once

#include <stdexcept>
#include <string>

namespace dyadic {

// Malformed or inconsistent input data (bad files, invalid bits, unusable models).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A numerical integrity check failed, e.g. a PMF that no longer sums to one.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace dyadic
