#include "gsm/io/trace_csv.hpp"

#include "gsm/io/file.hpp"
#include "text_reader.hpp"

#include <cmath>

namespace gsm {

namespace {

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t c = line.find(',', start);
    out.push_back(line.substr(start, c == std::string_view::npos ? std::string_view::npos : c - start));
    if (c == std::string_view::npos) break;
    start = c + 1;
  }
  return out;
}

}  // namespace

std::string format_trace_csv(const EnergyTrace& trace) {
  if (trace.columns.empty()) throw InvalidArgument("format_trace_csv: trace has no columns");
  std::string out;
  for (std::size_t c = 0; c < trace.columns.size(); ++c) out += (c ? "," : "") + trace.columns[c];
  out += '\n';
  for (const auto& row : trace.rows) {
    if (row.size() != trace.columns.size()) throw InvalidArgument("format_trace_csv: ragged row");
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      if (c == 0) out += std::to_string(static_cast<long long>(row[0]));
      else out += format_double(row[c]);
    }
    out += '\n';
  }
  return out;
}

EnergyTrace parse_trace_csv(std::string_view text) {
  detail::LineReader r(text, "trace");
  EnergyTrace trace;
  for (auto name : split_commas(r.next_line("header row"))) {
    if (name.empty()) r.fail("empty column name");
    trace.columns.emplace_back(name);
  }
  while (!r.at_end()) {
    const auto cells = split_commas(r.next_line("row"));
    if (cells.size() != trace.columns.size())
      r.fail("expected " + std::to_string(trace.columns.size()) + " cells, got " + std::to_string(cells.size()));
    std::vector<double> row;
    row.push_back(static_cast<double>(r.to_int<long long>(cells[0])));
    for (std::size_t c = 1; c < cells.size(); ++c) row.push_back(r.to_double(cells[c]));
    trace.rows.push_back(std::move(row));
  }
  return trace;
}

void write_trace_csv(const std::filesystem::path& path, const EnergyTrace& trace) {
  write_file(path, format_trace_csv(trace));
}

EnergyTrace read_trace_csv(const std::filesystem::path& path) { return parse_trace_csv(read_file(path)); }

}  // namespace gsm
