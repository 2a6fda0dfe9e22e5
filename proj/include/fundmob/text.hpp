#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace fundmob::text {

/// NFKD, drop combining marks, case-fold, map typographic quotes and dashes
/// to ASCII, collapse whitespace runs to one space and trim. Punctuation is
/// kept. Input must be UTF-8; invalid sequences become U+FFFD.
std::string normalize(std::string_view utf8);

/// Normalized text split into comparison tokens. Tokens break on whitespace
/// and on , ; : ( ) [ ] { } " ! ? /; periods are stripped from token edges
/// (internal periods survive, so "c.l." compares as "c.l"); a trailing
/// possessive "'s" is removed.
std::vector<std::string> comparison_tokens(std::string_view utf8);

/// Same tokenization applied to text that is already normalized.
std::vector<std::string> tokens_of_normalized(std::string_view normalized);

/// True when `needle` occurs as a contiguous run inside `haystack`.
bool contains_token_run(const std::vector<std::string>& haystack,
                        const std::vector<std::string>& needle);

std::string ascii_lower(std::string_view s);
std::string trim(std::string_view s);

/// Splits on a single delimiter character, keeping empty fields.
std::vector<std::string> split(std::string_view s, char delim);

}  // namespace fundmob::text
