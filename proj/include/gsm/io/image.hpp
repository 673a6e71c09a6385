#pragma once

#include "gsm/render/splat.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace gsm {

/// 8-bit quantization used by both writers: round(clamp(v, 0, 1) * 255), halves rounded up.
unsigned char quantize_channel(double v);

std::string format_ppm(const RgbImage& image);   // P6, maxval 255
std::string format_pgm(const AlphaImage& image); // P5, maxval 255
/// Readers return values k / 255.
RgbImage parse_ppm(std::string_view bytes);
AlphaImage parse_pgm(std::string_view bytes);

void write_ppm(const std::filesystem::path& path, const RgbImage& image);
void write_pgm(const std::filesystem::path& path, const AlphaImage& image);
RgbImage read_ppm(const std::filesystem::path& path);
AlphaImage read_pgm(const std::filesystem::path& path);

}  // namespace gsm
