#include "gsm/morton/mapping.hpp"

#include "gsm/core/error.hpp"
#include "gsm/morton/morton.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace gsm {

namespace {

void check_capacity(std::size_t count, Resolution resolution) {
  if (resolution.width <= 0 || resolution.height <= 0)
    throw InvalidArgument("mapping: resolution must be positive");
  if (count > resolution.pixels()) {
    const auto side = static_cast<long long>(std::ceil(std::sqrt(static_cast<double>(count))));
    throw CapacityError("mapping: " + std::to_string(count) + " kernels exceed " + std::to_string(resolution.width) +
                        "x" + std::to_string(resolution.height) + " pixels; minimum square resolution is " +
                        std::to_string(side) + "x" + std::to_string(side));
  }
}

}  // namespace

MortonMapping::MortonMapping(Resolution resolution, std::vector<Pixel> uv, int bits, Box bbox)
    : resolution_(resolution), uv_(std::move(uv)), bits_(bits), bbox_(bbox) {
  check_capacity(uv_.size(), resolution_);
  owner_.assign(resolution_.pixels(), -1);
  for (std::size_t i = 0; i < uv_.size(); ++i) {
    const Pixel p = uv_[i];
    if (p.u < 0 || p.v < 0 || p.u >= resolution_.width || p.v >= resolution_.height)
      throw InvalidArgument("mapping: pixel of kernel " + std::to_string(i) + " out of range");
    auto& slot = owner_[pixel_index(i)];
    if (slot >= 0) throw InvalidArgument("mapping: kernels " + std::to_string(slot) + " and " + std::to_string(i) +
                                         " share a pixel");
    slot = static_cast<std::int64_t>(i);
  }
}

MortonMapping mapping_from_order(std::span<const std::size_t> order, Resolution resolution) {
  return mapping_from_order_with_box(order, resolution, 10, Box{});
}

MortonMapping mapping_from_order_with_box(std::span<const std::size_t> order, Resolution resolution, int bits,
                                          const Box& bbox) {
  check_capacity(order.size(), resolution);
  std::vector<Pixel> uv(order.size());
  std::vector<bool> seen(order.size(), false);
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    const std::size_t kernel = order[rank];
    if (kernel >= order.size() || seen[kernel]) throw InvalidArgument("mapping_from_order: order is not a permutation");
    seen[kernel] = true;
    uv[kernel] = {static_cast<int>(rank % static_cast<std::size_t>(resolution.width)),
                  static_cast<int>(rank / static_cast<std::size_t>(resolution.width))};
  }
  return MortonMapping(resolution, std::move(uv), bits, bbox);
}

MortonMapping build_mapping(const PointList& canonical_positions, Resolution resolution, int bits) {
  check_capacity(canonical_positions.size(), resolution);
  if (bits < 1 || bits > kMaxMortonBits) throw InvalidArgument("build_mapping: bits must be in [1, 21]");

  Box bbox = bounding_box(canonical_positions);
  bbox.min.array() -= 1e-6;
  bbox.max.array() += 1e-6;

  std::vector<std::uint64_t> codes(canonical_positions.size());
  for (std::size_t i = 0; i < codes.size(); ++i) codes[i] = morton_encode(quantize(canonical_positions[i], bbox, bits));

  std::vector<std::size_t> order(codes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return codes[a] < codes[b] || (codes[a] == codes[b] && a < b);
  });
  return mapping_from_order_with_box(order, resolution, bits, bbox);
}

MortonMapping build_y_sort_mapping(const PointList& positions, Resolution resolution) {
  std::vector<std::size_t> order(positions.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return positions[a].y() < positions[b].y(); });
  return mapping_from_order(order, resolution);
}

MortonMapping build_random_mapping(std::size_t count, Resolution resolution, std::uint64_t seed) {
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  // Explicit Fisher-Yates: std::shuffle's output is implementation-defined.
  for (std::size_t i = count; i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(order[i - 1], order[j]);
  }
  return mapping_from_order(order, resolution);
}

double locality_score(const MortonMapping& mapping, const PointList& canonical_positions) {
  if (canonical_positions.size() != mapping.valid_count())
    throw InvalidArgument("locality_score: position count does not match the mapping");
  const Resolution res = mapping.resolution();
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < mapping.valid_count(); ++i) {
    const Pixel p = mapping.uv()[i];
    const int du[4] = {1, -1, 0, 0};
    const int dv[4] = {0, 0, 1, -1};
    for (int n = 0; n < 4; ++n) {
      const int u = p.u + du[n], v = p.v + dv[n];
      if (u < 0 || v < 0 || u >= res.width || v >= res.height) continue;
      const std::int64_t other = mapping.owner(u, v);
      if (other < 0) continue;
      sum += (canonical_positions[i] - canonical_positions[static_cast<std::size_t>(other)]).norm();
      ++pairs;
    }
  }
  return pairs == 0 ? 0.0 : sum / static_cast<double>(pairs);
}

}  // namespace gsm
