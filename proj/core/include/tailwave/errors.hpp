#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tailwave {

// Base of all library errors. The three direct subclasses map onto the CLI
// exit codes: ValidationError -> 2, NumericalError -> 3, IndeterminateError -> 4.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValidationError : Error {
  using Error::Error;
};

struct NumericalError : Error {
  using Error::Error;
};

struct IndeterminateError : Error {
  using Error::Error;
};

// Parse failure, with the byte offset into the input and the token set that
// would have been accepted there.
struct SyntaxError : ValidationError {
  SyntaxError(std::size_t offset, std::string expected)
      : ValidationError("syntax error at byte " + std::to_string(offset) +
                        ": expected " + expected),
        offset(offset),
        expected(std::move(expected)) {}
  std::size_t offset;
  std::string expected;
};

// Identifier other than u, v or a known function name.
struct UnknownIdentifier : ValidationError {
  UnknownIdentifier(std::size_t offset, std::string name)
      : ValidationError("unknown identifier '" + name + "' at byte " +
                        std::to_string(offset)),
        offset(offset),
        name(std::move(name)) {}
  std::size_t offset;
  std::string name;
};

// Evaluation hit a vanishing denominator or log argument.
struct SingularPoint : NumericalError {
  using NumericalError::NumericalError;
};

// Every sampled point of a zero test was singular.
struct AllPointsSingular : IndeterminateError {
  using IndeterminateError::IndeterminateError;
};

// An integration path or grid rectangle crosses a declared singular line.
struct SingularPath : NumericalError {
  using NumericalError::NumericalError;
};

// The marching scheme produced a cell whose pivot is numerically zero.
struct UnstableCell : NumericalError {
  using NumericalError::NumericalError;
};

struct CflViolation : NumericalError {
  using NumericalError::NumericalError;
};

// Compact-support data whose edges do not land on grid nodes.
struct SupportNotAligned : ValidationError {
  using ValidationError::ValidationError;
};

struct RegionEmpty : ValidationError {
  using ValidationError::ValidationError;
};

struct NotCpp : ValidationError {
  using ValidationError::ValidationError;
};

struct NotTerminating : ValidationError {
  using ValidationError::ValidationError;
};

// A zero test that decides chain termination could not be carried out.
struct IndeterminateTermination : IndeterminateError {
  using IndeterminateError::IndeterminateError;
};

}  // namespace tailwave
