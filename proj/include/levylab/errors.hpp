#pragma once

#include <stdexcept>
#include <string>

namespace levylab {

// Thrown when an algorithm fails numerically (non-convergent continued
// fraction, divergent moment, ...) as opposed to a caller contract violation.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace levylab
