#pragma once

#include <string>
#include <string_view>

namespace reval::detail {

/// Strict UTF-8 decode (rejects overlongs, surrogates, > U+10FFFF).
/// Returns false on malformed input; `byte_offset` then points at the bad byte.
bool decode_utf8(std::string_view in, std::u32string& out, std::size_t& byte_offset);

void append_utf8(std::string& out, char32_t cp);

std::string encode_utf8(std::u32string_view in);

}  // namespace reval::detail
