#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace dyadic {

std::string trim(std::string_view s);

// Splits one delimited line; fields wrapped in double quotes may contain the
// delimiter, and "" inside a quoted field is a literal quote.
std::vector<std::string> split_fields(std::string_view line, char delimiter);

// Quotes a field when it contains the delimiter, a quote or a newline.
std::string escape_field(std::string_view field, char delimiter);

// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

std::string read_text_file(const std::filesystem::path& path);
// Throws InputError when the destination cannot be written.
void write_text_file(const std::filesystem::path& path, std::string_view content);

// Lines with trailing '\r' removed.
std::vector<std::string> split_lines(std::string_view text);

}  // namespace dyadic
