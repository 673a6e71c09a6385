#include "gsm/io/labels.hpp"

#include "gsm/io/file.hpp"
#include "text_reader.hpp"

#include <algorithm>

namespace gsm {

std::string format_label_csv(const GaussianSet& set, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < set.size(); ++i) {
    const auto& label = set.kernels[i].label;
    if (!label) continue;
    if (*label < 0 || static_cast<std::size_t>(*label) >= names.size())
      throw InvalidArgument("format_label_csv: kernel " + std::to_string(i) + " has label " + std::to_string(*label) +
                            " without a name");
    const std::string& name = names[static_cast<std::size_t>(*label)];
    if (name.empty() || name.find_first_of(",\n\r") != std::string::npos)
      throw InvalidArgument("format_label_csv: label name '" + name + "' is empty or contains a separator");
    out += std::to_string(i) + "," + name + "\n";
  }
  return out;
}

std::vector<std::optional<std::string>> parse_label_csv(std::string_view text, std::size_t count) {
  detail::LineReader r(text, "labels");
  std::vector<std::optional<std::string>> out(count);
  std::size_t last = 0;
  bool any = false;
  while (!r.at_end()) {
    const std::string_view line = r.next_line("label entry");
    const std::size_t comma = line.find(',');
    if (comma == std::string_view::npos) r.fail("expected 'index,label'");
    const auto index = r.to_int<std::size_t>(line.substr(0, comma));
    const std::string_view name = line.substr(comma + 1);
    if (name.empty() || name.find(',') != std::string_view::npos) r.fail("label must be a non-empty field");
    if (index >= count)
      throw CountMismatch("labels: line " + std::to_string(r.line_number()) + ": index " + std::to_string(index) +
                          " out of range for " + std::to_string(count) + " kernels");
    if (any && index <= last) r.fail("indices must be strictly ascending");
    out[index] = std::string(name);
    last = index;
    any = true;
  }
  return out;
}

void apply_labels(GaussianSet& set, const std::vector<std::optional<std::string>>& labels,
                  std::vector<std::string>& names) {
  if (labels.size() != set.size()) throw InvalidArgument("apply_labels: one entry per kernel required");
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (!labels[i]) {
      set.kernels[i].label.reset();
      continue;
    }
    auto it = std::find(names.begin(), names.end(), *labels[i]);
    if (it == names.end()) it = names.insert(names.end(), *labels[i]);
    set.kernels[i].label = static_cast<int>(it - names.begin());
  }
}

void write_label_csv(const std::filesystem::path& path, const GaussianSet& set, const std::vector<std::string>& names) {
  write_file(path, format_label_csv(set, names));
}

std::vector<std::optional<std::string>> read_label_csv(const std::filesystem::path& path, std::size_t count) {
  return parse_label_csv(read_file(path), count);
}

}  // namespace gsm
