#include "gsm/morton/attribute_map.hpp"

#include "gsm/core/error.hpp"
#include "gsm/core/parallel.hpp"

#include <algorithm>
#include <string>

namespace gsm {

AttributeMap pack_map(const MortonMapping& mapping, std::span<const std::vector<double>> values,
                      int empty_channels) {
  if (values.size() != mapping.valid_count())
    throw InvalidArgument("pack_map: " + std::to_string(values.size()) + " value vectors for " +
                          std::to_string(mapping.valid_count()) + " mapped kernels");
  const int channels = values.empty() ? empty_channels : static_cast<int>(values.front().size());
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i].size() != static_cast<std::size_t>(channels))
      throw InvalidArgument("pack_map: kernel " + std::to_string(i) + " has " + std::to_string(values[i].size()) +
                            " channels, expected " + std::to_string(channels));

  AttributeMap map(mapping.resolution(), channels);
  parallel_for(0, values.size(), [&](std::size_t i) {
    std::copy(values[i].begin(), values[i].end(), map.pixel(mapping.pixel_index(i)));
  });
  return map;
}

std::vector<std::vector<double>> unpack_map(const MortonMapping& mapping, const AttributeMap& map) {
  if (!(map.resolution == mapping.resolution()))
    throw InvalidArgument("unpack_map: map resolution does not match the mapping");
  if (map.data.size() != map.resolution.pixels() * static_cast<std::size_t>(map.channels))
    throw InvalidArgument("unpack_map: map payload size does not match its header");
  std::vector<std::vector<double>> out(mapping.valid_count());
  parallel_for(0, out.size(), [&](std::size_t i) {
    const double* px = map.pixel(mapping.pixel_index(i));
    out[i].assign(px, px + map.channels);
  });
  return out;
}

}  // namespace gsm
