#pragma once

#include <stdexcept>
#include <string>

namespace sglab {

// Bad argument to an operation (k = 0, a = 0, duplicate coset reps, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Requested subgroup order does not divide p - 1.
class InvalidOrder : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class ModulusMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// An exact transform would exceed its working modulus.
class OverflowRisk : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A profile or set that should be constant on cosets is not.
class InvarianceViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CatalogError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// check_bound was asked for a quantity its context does not carry.
class DependencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InsufficientData : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operation is expensive at this p and was not explicitly enabled.
class HeavyOperationDisabled : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sglab
