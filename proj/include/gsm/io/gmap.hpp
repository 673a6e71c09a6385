#pragma once

#include "gsm/morton/attribute_map.hpp"
#include "gsm/morton/mapping.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace gsm {

// Binary layout, little-endian:
//   "GMAP", u32 version, u32 width, u32 height, u32 channels, payload row-major with channels innermost.
// Version 1 stores binary32 values; version 2 stores binary64 and round-trips doubles exactly.

enum class GmapPrecision : std::uint32_t { Float32 = 1, Float64 = 2 };

std::string format_gmap(const AttributeMap& map, GmapPrecision precision = GmapPrecision::Float32);
AttributeMap parse_gmap(std::string_view bytes);

void write_gmap(const std::filesystem::path& path, const AttributeMap& map,
                GmapPrecision precision = GmapPrecision::Float32);
AttributeMap read_gmap(const std::filesystem::path& path);

// Companion mapping text:
//   MMAP 1
//   resolution <W> <H>
//   bits <b>
//   bbox minx miny minz maxx maxy maxz
//   count <N>
//   <index> <u> <v>      (N lines)

std::string format_mapping(const MortonMapping& mapping);
MortonMapping parse_mapping(std::string_view text);

void write_mapping(const std::filesystem::path& path, const MortonMapping& mapping);
MortonMapping read_mapping(const std::filesystem::path& path);

}  // namespace gsm
