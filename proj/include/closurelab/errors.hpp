#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace closurelab {

/// Operands live in different ambient dimensions.
class DimensionMismatch : public std::invalid_argument {
 public:
  explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// An enumeration (lattice points, family members) would exceed its cap.
class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Input violates a mathematical precondition (e.g. not well-behaved).
class PreconditionViolation : public std::invalid_argument {
 public:
  explicit PreconditionViolation(const std::string& what) : std::invalid_argument(what) {}
};

/// Malformed instance or report document.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Enumeration cap: CLOSURELAB_CAP if set, otherwise 10^6.
std::size_t enumeration_cap();

}  // namespace closurelab
