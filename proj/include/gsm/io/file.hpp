#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace gsm {

std::string read_file(const std::filesystem::path& path);
/// Writes atomically enough for our purposes: truncate, write, check the stream.
void write_file(const std::filesystem::path& path, std::string_view bytes);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

}  // namespace gsm
