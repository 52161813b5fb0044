#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace ddr {

/// Byte-lexicographic suffix array of `bytes`: the returned positions order
/// all suffixes ascending. Construction is linear-time induced sorting over
/// the raw byte alphabet, so any input (including 0x00 and 0x01 bytes) works.
std::vector<std::uint64_t> build_suffix_array(std::string_view bytes);

/// Half-open range [lo, hi) into `sa` covering exactly the suffixes of `text`
/// that begin with `pattern`. O(|pattern| * log |text|).
std::pair<std::uint64_t, std::uint64_t> suffix_prefix_range(
    std::string_view text, const std::vector<std::uint64_t>& sa, std::string_view pattern);

}  // namespace ddr
