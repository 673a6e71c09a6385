#pragma once

#include "gsm/core/types.hpp"

#include <cstddef>
#include <cstdint>

namespace gsm {

/// Largest per-axis bit width that fits a 63-bit interleaved code.
inline constexpr int kMaxMortonBits = 21;

struct Cell {
  std::uint32_t x = 0;
  std::uint32_t y = 0;
  std::uint32_t z = 0;

  bool operator==(const Cell&) const = default;
};

/// Affine map of `position` from `bbox` onto [0, 2^bits - 1] per axis, floored. Coordinates outside
/// the box clamp to the boundary and bump `*clamp_count` when given.
Cell quantize(const Vec3& position, const Box& bbox, int bits, std::size_t* clamp_count = nullptr);

/// Interleaves bit b of x, y, z into code bits 3b, 3b+1, 3b+2.
std::uint64_t morton_encode(std::uint32_t x, std::uint32_t y, std::uint32_t z);
std::uint64_t morton_encode(const Cell& cell);
Cell morton_decode(std::uint64_t code);

}  // namespace gsm
