#pragma once

#include <stdexcept>
#include <string>

namespace ps4 {

/// Raised when inputs are well-formed but violate a mathematical or
/// numerical precondition (range errors, precision floor, budget limits).
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ps4
