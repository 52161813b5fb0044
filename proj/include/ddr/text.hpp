#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ddr::text {

bool valid_utf8(std::string_view s);

// Decodes the code point at byte offset i and advances i past it.
// Invalid sequences yield U+FFFD and advance by one byte.
char32_t decode_utf8(std::string_view s, std::size_t& i);

std::vector<std::string> split(std::string_view s, char sep);

std::string to_lower_ascii(std::string_view s);

std::string_view trim(std::string_view s);

}  // namespace ddr::text
