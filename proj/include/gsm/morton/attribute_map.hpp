#pragma once

#include "gsm/morton/mapping.hpp"

#include <span>
#include <vector>

namespace gsm {

/// W x H x C grid, row-major with channels innermost. Pixels not owned by a kernel hold zeros.
struct AttributeMap {
  Resolution resolution{0, 0};
  int channels = 0;
  std::vector<double> data;

  AttributeMap() = default;
  AttributeMap(Resolution res, int c)
      : resolution(res), channels(c), data(res.pixels() * static_cast<std::size_t>(c), 0.0) {}

  double* pixel(std::size_t index) { return data.data() + index * static_cast<std::size_t>(channels); }
  const double* pixel(std::size_t index) const {
    return data.data() + index * static_cast<std::size_t>(channels);
  }
  bool operator==(const AttributeMap&) const = default;
};

/// Scatters per-kernel C-vectors into a map. All vectors must share one channel count.
/// An empty value list yields an all-zero map with `empty_channels` channels.
AttributeMap pack_map(const MortonMapping& mapping, std::span<const std::vector<double>> values,
                      int empty_channels = 0);
/// Gathers per-kernel values back from valid pixels only.
std::vector<std::vector<double>> unpack_map(const MortonMapping& mapping, const AttributeMap& map);

}  // namespace gsm
