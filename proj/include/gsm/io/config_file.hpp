#pragma once

#include "gsm/pipeline/config.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace gsm {

/// Recognized keys, in the order format_config writes them.
const std::vector<std::string>& config_keys();

/// Applies "key = value" lines on top of `base`. Blank lines and lines starting with '#' are
/// skipped. Unknown or repeated keys and bad values raise ParseError with the line number.
/// `l` and the lr_* keys apply to both tracking and re-performance.
PipelineConfig parse_config(std::string_view text, const PipelineConfig& base = {});
std::string format_config(const PipelineConfig& cfg);

PipelineConfig read_config(const std::filesystem::path& path, const PipelineConfig& base = {});

}  // namespace gsm
