#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace reid {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent polycyclic presentation.
class PresentationError : public Error {
 public:
  using Error::Error;
};

/// Generator images that do not define a homomorphism.
class MorphismError : public Error {
 public:
  using Error::Error;
};

/// A subgroup that should be mapped into itself is not.
class NotInvariantError : public Error {
 public:
  NotInvariantError() : Error("subgroup not invariant") {}
  explicit NotInvariantError(const std::string& what) : Error("subgroup not invariant: " + what) {}
};

class NotAbelianQuotientError : public Error {
 public:
  NotAbelianQuotientError() : Error("quotient not abelian") {}
  explicit NotAbelianQuotientError(const std::string& what) : Error("quotient not abelian: " + what) {}
};

/// Requested a finite-only operation (order, enumeration) on an infinite group.
class InfiniteGroupError : public Error {
 public:
  explicit InfiniteGroupError(const std::string& what) : Error(what) {}
};

/// The twisted-conjugacy recursion met an infinite coincidence group in a
/// quotient and cannot loop over it. Raised instead of a wrong answer.
class InfiniteCoincidenceError : public Error {
 public:
  InfiniteCoincidenceError(std::size_t level, std::size_t hirsch_length)
      : Error("infinite coincidence group at level " + std::to_string(level) + " (Hirsch length " +
              std::to_string(hirsch_length) + ")"),
        level_(level),
        hirsch_length_(hirsch_length) {}

  std::size_t level() const { return level_; }
  std::size_t hirsch_length() const { return hirsch_length_; }

 private:
  std::size_t level_;
  std::size_t hirsch_length_;
};

/// A finite enumeration exceeded the caller-imposed cap.
class EnumerationLimitError : public Error {
 public:
  explicit EnumerationLimitError(const std::string& what) : Error(what) {}
};

}  // namespace reid
