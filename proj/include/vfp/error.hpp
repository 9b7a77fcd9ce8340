#pragma once

#include <stdexcept>
#include <string>

namespace vfp {

enum class ErrorCode {
  InvalidArgument = 1,
  FileNotFound,
  MissingLabelColumn,
  ParseError,
  DegenerateSplit,
  LengthMismatch,
  NonFiniteScore,
  UnsupportedDims,
  ImageTooSmall,
  IoError,
  FormatError,
  NotFound,
  InconsistentInputs,
};

const char* to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so the
// C layer can map it onto a stable status value.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by the CSV reader for a single offending cell. Rows and columns are
// 1-based as a user would count them in a spreadsheet (the header is row 1).
class ParseError : public Error {
 public:
  ParseError(std::size_t row, std::size_t col, const std::string& detail);

  std::size_t row() const noexcept { return row_; }
  std::size_t col() const noexcept { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

}  // namespace vfp
