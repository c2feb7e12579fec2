#pragma once

#include <stdexcept>
#include <string>

namespace heatlaw {

/// Raised when an input breaks a documented invariant. The message always
/// starts with the name of the type or operation whose invariant failed.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace heatlaw
