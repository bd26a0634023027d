// Licensed under the Apache License, Version 2.0.
// http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ampd {

// Splits UTF-8 text into maximal runs of alphanumeric codepoints (Unicode
// letters and decimal digits; underscore is not alphanumeric), lowercases
// them, and drops runs shorter than two codepoints. Order and duplicates
// are preserved. Malformed UTF-8 bytes act as separators.
std::vector<std::string> tokenize(std::string_view text);

// Per-codepoint lowercasing of UTF-8 text (simple 1:1 mappings only).
std::string lowercase(std::string_view text);

namespace detail {
bool is_alnum_codepoint(char32_t cp);
char32_t lower_codepoint(char32_t cp);
}  // namespace detail

}  // namespace ampd
