#pragma once

#include <stdexcept>
#include <string>

namespace mug {

// Base class for everything the library throws.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid configuration values (CLI exit code 2).
struct ConfigError : Error {
  using Error::Error;
};

// Bad input data: parse failures, shape mismatches, degenerate columns
// (CLI exit code 3).
struct DataError : Error {
  using Error::Error;
};

// No converged solution could be produced (CLI exit code 4).
struct SolverError : Error {
  using Error::Error;
};

// Column indices in messages are 1-based, matching all user-facing I/O.
struct ZeroColumnError : DataError {
  int column;  // 1-based
  explicit ZeroColumnError(int column_one_based)
      : DataError("column " + std::to_string(column_one_based) + " of the design matrix is identically zero"),
        column(column_one_based) {}
};

struct DimensionMismatchError : DataError {
  using DataError::DataError;
};

struct EmptyListError : DataError {
  using DataError::DataError;
};

struct BadGroupIndexError : DataError {
  int group;  // 1-based
  explicit BadGroupIndexError(int group_one_based, int d)
      : DataError("group index " + std::to_string(group_one_based) + " out of range; grouping has " +
                  std::to_string(d) + " groups"),
        group(group_one_based) {}
};

struct RaggedRowsError : DataError {
  int line;  // 1-based line number in the file
  RaggedRowsError(const std::string& path, int line_number, int got, int expected)
      : DataError(path + ": row at line " + std::to_string(line_number) + " has " + std::to_string(got) +
                  " cells, expected " + std::to_string(expected)),
        line(line_number) {}
};

struct NonNumericCellError : DataError {
  int row;     // 1-based
  int column;  // 1-based
  NonNumericCellError(const std::string& path, int row_one_based, int column_one_based, const std::string& token)
      : DataError(path + ": cell at row " + std::to_string(row_one_based) + ", column " +
                  std::to_string(column_one_based) + " is not numeric: '" + token + "'"),
        row(row_one_based),
        column(column_one_based) {}
};

struct DegenerateSplitError : DataError {
  using DataError::DataError;
};

}  // namespace mug
