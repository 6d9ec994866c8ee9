#pragma once

#include <stdexcept>
#include <string>

namespace hitdisk {

/// A point or coordinate lies outside the region where a map or kernel is defined.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Rejected construction parameters (degenerate correlation, bad radius, bad controls).
class InvalidArgument : public std::invalid_argument {
 public:
  explicit InvalidArgument(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace hitdisk
