#pragma once

#include "gsm/core/gaussian.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gsm {

/// "index,label_string" per labeled kernel, ascending index. `names[label]` gives the string.
std::string format_label_csv(const GaussianSet& set, const std::vector<std::string>& names);
/// One entry per kernel (`count` kernels); kernels without a line stay unlabeled.
std::vector<std::optional<std::string>> parse_label_csv(std::string_view text, std::size_t count);

/// Sets kernel labels from strings. Names missing from `names` are appended to it.
void apply_labels(GaussianSet& set, const std::vector<std::optional<std::string>>& labels,
                  std::vector<std::string>& names);

void write_label_csv(const std::filesystem::path& path, const GaussianSet& set, const std::vector<std::string>& names);
std::vector<std::optional<std::string>> read_label_csv(const std::filesystem::path& path, std::size_t count);

}  // namespace gsm
