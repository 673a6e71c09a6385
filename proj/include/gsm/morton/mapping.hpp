#pragma once

#include "gsm/core/types.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace gsm {

struct Resolution {
  int width = 512;
  int height = 512;

  std::size_t pixels() const { return static_cast<std::size_t>(width) * static_cast<std::size_t>(height); }
  bool operator==(const Resolution&) const = default;
};

struct Pixel {
  int u = 0;
  int v = 0;

  bool operator==(const Pixel&) const = default;
};

/// Frame-independent kernel -> pixel assignment. Built once from canonical positions and reused
/// for every frame of the sequence and for re-performance.
class MortonMapping {
 public:
  MortonMapping() = default;
  /// Takes ownership of a rank-ordered pixel assignment; validates injectivity and bounds.
  MortonMapping(Resolution resolution, std::vector<Pixel> uv, int bits, Box bbox);

  Resolution resolution() const { return resolution_; }
  const std::vector<Pixel>& uv() const { return uv_; }
  std::size_t valid_count() const { return uv_.size(); }
  int bits() const { return bits_; }
  const Box& bbox() const { return bbox_; }

  std::size_t pixel_index(std::size_t kernel) const {
    return static_cast<std::size_t>(uv_[kernel].v) * static_cast<std::size_t>(resolution_.width) +
           static_cast<std::size_t>(uv_[kernel].u);
  }
  /// Kernel stored at a pixel, or -1 when the pixel is invalid.
  std::int64_t owner(int u, int v) const {
    return owner_[static_cast<std::size_t>(v) * static_cast<std::size_t>(resolution_.width) +
                  static_cast<std::size_t>(u)];
  }

  bool operator==(const MortonMapping& o) const {
    return resolution_ == o.resolution_ && uv_ == o.uv_ && bits_ == o.bits_;
  }

 private:
  Resolution resolution_;
  std::vector<Pixel> uv_;
  int bits_ = 10;
  Box bbox_;
  std::vector<std::int64_t> owner_;
};

/// Rank kernels by (Morton code, index) of their quantized canonical positions; rank r lands on
/// pixel (r mod W, r div W). Throws CapacityError when more kernels than pixels.
MortonMapping build_mapping(const PointList& canonical_positions, Resolution resolution = {}, int bits = 10);

/// Row-major placement of an explicit kernel order (order[r] = kernel at rank r). Used for the
/// y-sort and random baselines.
MortonMapping mapping_from_order(std::span<const std::size_t> order, Resolution resolution);
MortonMapping mapping_from_order_with_box(std::span<const std::size_t> order, Resolution resolution, int bits,
                                          const Box& bbox);
MortonMapping build_y_sort_mapping(const PointList& positions, Resolution resolution);
MortonMapping build_random_mapping(std::size_t count, Resolution resolution, std::uint64_t seed);

/// Mean 3D distance between each kernel and the kernels in its 4-connected pixel neighborhood.
/// Lower means UV adjacency better reflects spatial adjacency.
double locality_score(const MortonMapping& mapping, const PointList& canonical_positions);

}  // namespace gsm
