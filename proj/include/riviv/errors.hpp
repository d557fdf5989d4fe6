#pragma once

#include <stdexcept>
#include <string>

namespace riviv {

/// Base class for numerical failures (exit code 2 territory in the CLI).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Base class for bad user input (exit code 1 territory in the CLI).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotPositiveDefinite : NumericalError {
  using NumericalError::NumericalError;
};

struct RankDeficient : NumericalError {
  explicit RankDeficient(const std::string& msg, int column = -1)
      : NumericalError(msg), column_index(column) {}
  /// Design-column index with the smallest pivot, -1 when unknown.
  int column_index;
};

struct ZeroScale : NumericalError {
  using NumericalError::NumericalError;
};

struct DegenerateSandwich : NumericalError {
  using NumericalError::NumericalError;
};

struct DegenerateDirection : NumericalError {
  using NumericalError::NumericalError;
};

struct EmptyGrid : InputError {
  using InputError::InputError;
};

struct CsvError : InputError {
  using InputError::InputError;
};

struct SchemaError : InputError {
  using InputError::InputError;
};

}  // namespace riviv
