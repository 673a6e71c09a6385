#pragma once

#include "gsm/core/gaussian.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace gsm {

// Text layout:
//   GSET 1
//   role motion|appearance
//   frame <int>
//   count <N>
//   color_channels <C>
//   <index> px py pz qw qx qy qz s0 s1 s2 opacity c_1..c_C [label]     (N lines)

std::string format_gset(const GaussianSet& set);
GaussianSet parse_gset(std::string_view text);

void write_gset(const std::filesystem::path& path, const GaussianSet& set);
GaussianSet read_gset(const std::filesystem::path& path);

/// Target clouds reuse the appearance layout.
void write_cloud(const std::filesystem::path& path, const ColoredCloud& cloud, int frame = 0);
ColoredCloud read_cloud(const std::filesystem::path& path);

}  // namespace gsm
