#pragma once

#include <stdexcept>
#include <string>

namespace qglab {

// Invalid or inconsistent configuration / input description.
struct config_error : std::runtime_error {
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Runtime numerical failure (instability, degenerate coordinates, ...).
struct numeric_error : std::runtime_error {
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qglab
