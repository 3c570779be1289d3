#pragma once

#include <stdexcept>
#include <string>

namespace lrp {

/// Precondition violation on a domain value (bad coordinate, empty set, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A configured work budget would be exceeded; the caller should pick the
/// scalable variant of the operation instead.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a growth step is requested on a chain whose boundary is empty.
class ChainHalted : public std::runtime_error {
 public:
  explicit ChainHalted(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lrp
