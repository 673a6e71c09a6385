#include "gsm/morton/morton.hpp"

#include "gsm/core/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gsm {

namespace {

// Spread the low 21 bits of v so that bit b moves to bit 3b.
std::uint64_t spread_bits(std::uint64_t v) {
  v &= 0x1fffffULL;
  v = (v | v << 32) & 0x1f00000000ffffULL;
  v = (v | v << 16) & 0x1f0000ff0000ffULL;
  v = (v | v << 8) & 0x100f00f00f00f00fULL;
  v = (v | v << 4) & 0x10c30c30c30c30c3ULL;
  v = (v | v << 2) & 0x1249249249249249ULL;
  return v;
}

std::uint32_t compact_bits(std::uint64_t v) {
  v &= 0x1249249249249249ULL;
  v = (v ^ (v >> 2)) & 0x10c30c30c30c30c3ULL;
  v = (v ^ (v >> 4)) & 0x100f00f00f00f00fULL;
  v = (v ^ (v >> 8)) & 0x1f0000ff0000ffULL;
  v = (v ^ (v >> 16)) & 0x1f00000000ffffULL;
  v = (v ^ (v >> 32)) & 0x1fffffULL;
  return static_cast<std::uint32_t>(v);
}

}  // namespace

Cell quantize(const Vec3& position, const Box& bbox, int bits, std::size_t* clamp_count) {
  if (bits < 1 || bits > kMaxMortonBits) throw InvalidArgument("quantize: bits must be in [1, 21]");
  const Vec3 extent = bbox.extent();
  if (!(extent.minCoeff() > 0.0)) throw InvalidArgument("quantize: bounding box needs positive extent on every axis");
  if (!position.allFinite()) throw InvalidArgument("quantize: non-finite position");

  const double cells = std::ldexp(1.0, bits);
  const auto max_cell = static_cast<std::uint32_t>(cells) - 1u;
  bool clamped = false;
  std::uint32_t out[3];
  for (int a = 0; a < 3; ++a) {
    if (position[a] < bbox.min[a] || position[a] > bbox.max[a]) clamped = true;
    const double t = std::floor((position[a] - bbox.min[a]) / extent[a] * cells);
    // The max face (t == cells) clamps silently; only points outside the box count.
    out[a] = t <= 0.0 ? 0u : (t >= static_cast<double>(max_cell) ? max_cell : static_cast<std::uint32_t>(t));
  }
  if (clamped && clamp_count) ++*clamp_count;
  return {out[0], out[1], out[2]};
}

std::uint64_t morton_encode(std::uint32_t x, std::uint32_t y, std::uint32_t z) {
  constexpr std::uint32_t limit = 1u << kMaxMortonBits;
  if (x >= limit || y >= limit || z >= limit)
    throw InvalidArgument("morton_encode: coordinate exceeds 21 bits (" + std::to_string(std::max({x, y, z})) + ")");
  return spread_bits(x) | spread_bits(y) << 1 | spread_bits(z) << 2;
}

std::uint64_t morton_encode(const Cell& cell) { return morton_encode(cell.x, cell.y, cell.z); }

Cell morton_decode(std::uint64_t code) {
  return {compact_bits(code), compact_bits(code >> 1), compact_bits(code >> 2)};
}

}  // namespace gsm
