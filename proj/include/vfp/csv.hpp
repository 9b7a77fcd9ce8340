#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace vfp::csv {

using Record = std::vector<std::string>;

// RFC-4180 reader. Accepts LF or CRLF line endings, quoted fields with
// embedded separators/newlines and doubled quotes, and skips a leading UTF-8
// BOM. A trailing newline at end of input does not produce an empty record.
// Throws vfp::ParseError on an unterminated quoted field.
std::vector<Record> parse(std::string_view text);

// Quotes a field only when it contains a comma, quote, CR or LF.
std::string escape(std::string_view field);

std::string join(const Record& fields);

}  // namespace vfp::csv
