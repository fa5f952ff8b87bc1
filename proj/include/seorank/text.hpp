#pragma once

// Small string and file helpers shared across modules.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace seorank::text {

std::string to_lower(std::string_view s);
std::string_view trim(std::string_view s);
bool starts_with_icase(std::string_view s, std::string_view prefix);
bool equals_icase(std::string_view a, std::string_view b);

/// Splits text into lines on LF, dropping a trailing CR from each line.
std::vector<std::string_view> split_lines(std::string_view text);

/// Splits one CSV record. Supports RFC 4180 double-quoted fields.
/// Throws ParseError on an unterminated quote.
std::vector<std::string> split_csv_record(std::string_view line);

/// Quotes a CSV field only if it contains a comma, quote, or newline.
std::string csv_field(std::string_view s);

/// Number of Unicode scalar values in UTF-8 text; invalid bytes count as one each.
std::size_t utf8_length(std::string_view s);

/// Fixed-point formatting with trailing zeros (and a bare ".") removed.
std::string format_trimmed(double v, int max_decimals);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace seorank::text
