#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// Thin UTF-8 helpers over ICU. Everything takes and returns UTF-8.
namespace aidapub::unicode {

bool is_valid_utf8(std::string_view text);

/// Canonical composed form (NFC). Invalid sequences become U+FFFD.
std::string nfc(std::string_view text);

std::size_t codepoint_count(std::string_view text);

/// Decodes to code points; invalid sequences decode to U+FFFD.
std::vector<char32_t> codepoints(std::string_view text);
std::string encode(char32_t cp);

bool is_space(char32_t cp);
bool is_control(char32_t cp);
bool is_alnum(char32_t cp);

std::string to_lower(std::string_view text);

/// Uppercases the first letter, leaving the rest untouched.
std::string upper_first(std::string_view text);

/// Strips Unicode whitespace from both ends.
std::string_view trim(std::string_view text);

}  // namespace aidapub::unicode
