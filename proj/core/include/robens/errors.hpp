#pragma once

#include <stdexcept>
#include <string>

namespace robens {

/// A computation failed for numerical reasons (no threshold crossing, no
/// admissible optimum, no sign change), as opposed to bad arguments.
struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace robens
