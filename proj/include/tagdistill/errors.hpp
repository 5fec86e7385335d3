#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tagdistill {

// Base of everything this library throws. Two categories matter to callers:
// DataError (malformed or inconsistent input) and NumericError (a computation
// that could not be completed). The CLI maps them to exit codes 2 and 3.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DataError : Error {
  using Error::Error;
};

struct NumericError : Error {
  using Error::Error;
};

// Tagged-text parse failures carry the byte offset of the offending input.
struct TagParseError : DataError {
  enum class Kind { UnknownLabel, UnbalancedTag, NestedTag };

  TagParseError(Kind k, std::size_t offset, const std::string& what)
      : DataError(what + " (byte " + std::to_string(offset) + ")"),
        kind(k),
        byte_offset(offset) {}

  Kind kind;
  std::size_t byte_offset;
};

struct SchemaError : DataError {
  using DataError::DataError;
};

struct InvariantViolation : DataError {
  using DataError::DataError;
};

struct DimensionMismatch : DataError {
  using DataError::DataError;
};

struct TargetOutOfRange : DataError {
  using DataError::DataError;
};

struct AllPadded : DataError {
  using DataError::DataError;
};

struct InvalidWeights : DataError {
  using DataError::DataError;
};

struct EmptyReference : DataError {
  using DataError::DataError;
};

struct DocIdMismatch : DataError {
  using DataError::DataError;
};

struct MissingTimestamps : DataError {
  using DataError::DataError;
};

struct EntityLongerThanWindow : DataError {
  using DataError::DataError;
};

struct NumericalUnderflow : NumericError {
  using NumericError::NumericError;
};

struct DegeneratePlan : NumericError {
  using NumericError::NumericError;
};

struct Diverged : NumericError {
  using NumericError::NumericError;
};

}  // namespace tagdistill
