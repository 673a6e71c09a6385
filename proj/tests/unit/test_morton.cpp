#include "doctest.h"

#include "gsm/core/error.hpp"
#include "gsm/morton/attribute_map.hpp"
#include "gsm/morton/mapping.hpp"
#include "gsm/morton/morton.hpp"
#include "support/fd.hpp"

#include <algorithm>
#include <numeric>
#include <random>

using namespace gsm;
using gsm::testing::uniform;

namespace {

// Bit-by-bit interleave: bit b of x, y, z lands at 3b, 3b+1, 3b+2.
std::uint64_t interleave_slow(std::uint32_t x, std::uint32_t y, std::uint32_t z, int bits) {
  std::uint64_t code = 0;
  for (int b = 0; b < bits; ++b) {
    code |= static_cast<std::uint64_t>((x >> b) & 1u) << (3 * b);
    code |= static_cast<std::uint64_t>((y >> b) & 1u) << (3 * b + 1);
    code |= static_cast<std::uint64_t>((z >> b) & 1u) << (3 * b + 2);
  }
  return code;
}

}  // namespace

TEST_CASE("quantize") {
  const Box unit{Vec3::Zero(), Vec3::Ones()};
  CHECK(quantize(Vec3::Zero(), unit, 10) == Cell{0, 0, 0});
  CHECK(quantize(Vec3::Ones(), unit, 10) == Cell{1023, 1023, 1023});
  CHECK(quantize(Vec3(0.5, 0.25, 0.999), unit, 2) == Cell{2, 1, 3});
  std::size_t clamped = 0;
  CHECK(quantize(Vec3(-1, 0.5, 2), unit, 4, &clamped) == Cell{0, 8, 15});
  CHECK(clamped == 1);
  quantize(Vec3::Ones(), unit, 4, &clamped);
  CHECK(clamped == 1);
  CHECK_THROWS_AS(quantize(Vec3::Zero(), unit, 0), InvalidArgument);
  CHECK_THROWS_AS(quantize(Vec3::Zero(), unit, 22), InvalidArgument);
}

TEST_CASE("morton encode examples") {
  CHECK(morton_encode(0, 0, 0) == 0);
  CHECK(morton_encode(1, 1, 1) == 7);
  CHECK(morton_encode(3, 5, 1) == 143);
  CHECK(morton_decode(143) == Cell{3, 5, 1});
  CHECK_THROWS_AS(morton_encode(1u << 21, 0, 0), InvalidArgument);
  const std::uint32_t top = (1u << 21) - 1;
  CHECK(morton_decode(morton_encode(top, 0, top)) == Cell{top, 0, top});
}

TEST_CASE("morton encode matches bitwise interleave") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    const auto x = static_cast<std::uint32_t>(rng() & 0x1FFFFF), y = static_cast<std::uint32_t>(rng() & 0x1FFFFF),
               z = static_cast<std::uint32_t>(rng() & 0x1FFFFF);
    CHECK(morton_encode(x, y, z) == interleave_slow(x, y, z, 21));
  }
}

TEST_CASE("mapping of cube corners follows corner codes") {
  PointList corners;
  // Kernel i sits at corner (bit0, bit1, bit2) of a scrambled index.
  const int scramble[8] = {5, 2, 7, 0, 3, 6, 1, 4};
  for (int i = 0; i < 8; ++i) {
    const int c = scramble[i];
    corners.emplace_back(c & 1, (c >> 1) & 1, (c >> 2) & 1);
  }
  const MortonMapping m = build_mapping(corners, Resolution{4, 4});
  for (int i = 0; i < 8; ++i) {
    const int c = scramble[i];
    const int x = c & 1, y = (c >> 1) & 1, z = (c >> 2) & 1;
    const int rank = 4 * z + 2 * y + x;
    CHECK(m.uv()[static_cast<std::size_t>(i)] == Pixel{rank % 4, rank / 4});
  }
  const MortonMapping single = build_mapping({Vec3(0.3, 0.2, 0.1)});
  CHECK(single.uv()[0] == Pixel{0, 0});
  CHECK(single.resolution() == Resolution{512, 512});
}

TEST_CASE("mapping capacity and validation") {
  PointList pts(17, Vec3::Zero());
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = Vec3(static_cast<double>(i), 0, 0);
  try {
    build_mapping(pts, Resolution{4, 4});
    FAIL("expected CapacityError");
  } catch (const CapacityError& e) {
    CHECK(std::string(e.what()).find("5x5") != std::string::npos);
  }
  CHECK_THROWS_AS(MortonMapping(Resolution{2, 2}, {Pixel{0, 0}, Pixel{0, 0}}, 10, Box{}), InvalidArgument);
  CHECK_THROWS_AS(MortonMapping(Resolution{2, 2}, {Pixel{2, 0}}, 10, Box{}), InvalidArgument);
}

TEST_CASE("pack and unpack") {
  std::mt19937_64 rng(2);
  PointList pts;
  std::vector<std::vector<double>> values;
  for (int i = 0; i < 1000; ++i) {
    pts.emplace_back(uniform(rng, 0, 1), uniform(rng, 0, 1), uniform(rng, 0, 1));
    values.push_back({uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1)});
  }
  const MortonMapping m = build_mapping(pts, Resolution{40, 30});
  const AttributeMap map = pack_map(m, values);
  CHECK(map.channels == 3);
  CHECK(unpack_map(m, map) == values);
  for (int v = 0; v < 30; ++v)
    for (int u = 0; u < 40; ++u)
      if (m.owner(u, v) < 0) {
        const double* px = map.pixel(static_cast<std::size_t>(v) * 40 + static_cast<std::size_t>(u));
        CHECK(px[0] == 0.0);
        CHECK(px[2] == 0.0);
      }

  const MortonMapping empty = build_mapping({}, Resolution{8, 8});
  const AttributeMap zero = pack_map(empty, std::span<const std::vector<double>>{}, 3);
  CHECK(std::all_of(zero.data.begin(), zero.data.end(), [](double v) { return v == 0.0; }));
  CHECK(zero.data.size() == 8 * 8 * 3);
}

TEST_CASE("locality scores") {
  const MortonMapping two = mapping_from_order(std::vector<std::size_t>{0, 1}, Resolution{2, 1});
  CHECK(locality_score(two, {Vec3(0, 0, 0), Vec3(0.3, 0.4, 0)}) == doctest::Approx(0.5));

  std::mt19937_64 rng(4);
  PointList pts;
  for (int i = 0; i < 10000; ++i) pts.emplace_back(uniform(rng, 0, 1), uniform(rng, 0, 1), uniform(rng, 0, 1));
  const Resolution res{100, 100};
  const double morton = locality_score(build_mapping(pts, res), pts);
  const double ysort = locality_score(build_y_sort_mapping(pts, res), pts);
  const double random = locality_score(build_random_mapping(pts.size(), res, 1), pts);
  CHECK(morton < ysort);
  CHECK(ysort < random);
}
