#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sentpair::text {

// Offset of the first byte that does not start a well-formed UTF-8
// sequence (overlongs, surrogates and code points past U+10FFFF are
// rejected), or nullopt when the whole input is valid.
std::optional<std::size_t> find_invalid_utf8(std::string_view s);

// Throws EncodingError when s is not valid UTF-8.
void require_utf8(std::string_view s, std::string_view context);

// Number of Unicode scalar values; s must be valid UTF-8.
std::size_t char_count(std::string_view s);

bool is_space(char c);

// Collapses whitespace runs to one ASCII space and trims both ends.
std::string normalize_whitespace(std::string_view s);

// Whitespace-delimited tokens, as views into s.
std::vector<std::string_view> split_tokens(std::string_view s);

std::size_t token_count(std::string_view s);

// First max_tokens tokens joined by single spaces. Sets *clipped when
// tokens were dropped.
std::string take_tokens(std::string_view s, std::size_t max_tokens, bool* clipped = nullptr);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

std::string ascii_lower(std::string_view s);

}  // namespace sentpair::text
