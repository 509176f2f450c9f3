#pragma once

#include <string>
#include <string_view>

namespace asrjudge::utf8 {

/// Strict decode; throws ParseError naming the byte offset on malformed input.
std::u32string decode(std::string_view text);

std::string encode(std::u32string_view text);

bool is_valid(std::string_view text) noexcept;

/// Number of Unicode scalar values. Assumes valid UTF-8.
std::size_t length(std::string_view text) noexcept;

/// Drops a leading U+FEFF byte-order mark if present.
std::string_view strip_bom(std::string_view text) noexcept;

}  // namespace asrjudge::utf8
