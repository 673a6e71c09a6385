#pragma once

#include "gsm/pipeline/optimize.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace gsm {

/// Header row of column names, then one row per iterate. The iteration column is an integer.
std::string format_trace_csv(const EnergyTrace& trace);
EnergyTrace parse_trace_csv(std::string_view text);

void write_trace_csv(const std::filesystem::path& path, const EnergyTrace& trace);
EnergyTrace read_trace_csv(const std::filesystem::path& path);

}  // namespace gsm
