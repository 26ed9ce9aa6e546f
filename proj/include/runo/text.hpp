#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace runo::text {

std::u32string decode_utf8(std::string_view s);
std::string encode_utf8(std::u32string_view s);

bool is_letter(char32_t c);
char32_t to_lower(char32_t c);
char32_t to_upper(char32_t c);

/// Finnish vowels: a e i o u y ä ö.
bool is_vowel(char32_t c);

/// Lowercased letters of a word, everything else dropped.
std::u32string letters_lower(std::string_view word);

/// Uppercase the first code point.
std::string capitalize(std::string_view word);
bool starts_upper(std::string_view word);

std::vector<std::string_view> split(std::string_view s, char sep);
std::string_view trim(std::string_view s);

}  // namespace runo::text
