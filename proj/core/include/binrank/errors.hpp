// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace binrank {

/// A caller broke an operation's precondition.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Row or column index outside the matrix.
class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// The requested instance is too large for the exhaustive routine.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An instance factory could not produce (or certify) what was asked for.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal invariant failed. Always a bug, never an input problem.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The non-adaptive replay asked for a cell that was never pre-queried.
class ReplayMissError : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

}  // namespace binrank
