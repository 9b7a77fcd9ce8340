#include "vfp/error.hpp"

namespace vfp {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::MissingLabelColumn: return "MissingLabelColumn";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DegenerateSplit: return "DegenerateSplit";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NonFiniteScore: return "NonFiniteScore";
    case ErrorCode::UnsupportedDims: return "UnsupportedDims";
    case ErrorCode::ImageTooSmall: return "ImageTooSmall";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::FormatError: return "FormatError";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::InconsistentInputs: return "InconsistentInputs";
  }
  return "Unknown";
}

ParseError::ParseError(std::size_t row, std::size_t col, const std::string& detail)
    : Error(ErrorCode::ParseError,
            "parse error at row " + std::to_string(row) + ", column " + std::to_string(col) +
                ": " + detail),
      row_(row),
      col_(col) {}

}  // namespace vfp
