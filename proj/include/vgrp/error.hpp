#pragma once

#include <stdexcept>
#include <string>

namespace vgrp {

/// Malformed input: ragged tables, out-of-range indices, mismatched shapes
/// or quantales. Distinct from a law violation.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its domain (non-integral quantale where
/// integrality is required, a non-covering passed where a covering is
/// expected, a cokernel of a non-normal image, ...).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An enumeration would exceed the candidate guard.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mathematical statement that must hold on valid inputs did not.
/// Never caught and suppressed inside the library.
class TheoremCheckFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vgrp
