#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace derand {

// LZW with variable-width codes (9 to 16 bits) behind a 32-bit length
// header. Used only for the non-normative solution-size report.

std::vector<std::uint8_t> lzw_compress(std::span<const std::uint8_t> data);
/// Throws Error on malformed input.
std::vector<std::uint8_t> lzw_decompress(std::span<const std::uint8_t> packed);

/// Exact number of bits lzw_compress emits (header included), before
/// padding to a whole byte.
std::uint64_t compressed_size_bits(std::span<const std::uint8_t> data);

}  // namespace derand
