#include "gsm/io/gset.hpp"

#include "gsm/io/file.hpp"
#include "text_reader.hpp"

#include <cmath>

namespace gsm {

namespace {

void append(std::string& out, double v) {
  if (!std::isfinite(v)) throw InvalidArgument("format_gset: non-finite value");
  out += ' ';
  out += format_double(v);
}

}  // namespace

std::string format_gset(const GaussianSet& set) {
  const std::size_t channels = set.color_channels();
  std::string out = "GSET 1\nrole ";
  out += role_name(set.role);
  out += "\nframe " + std::to_string(set.frame) + "\ncount " + std::to_string(set.size()) + "\ncolor_channels " +
         std::to_string(channels) + "\n";
  for (std::size_t i = 0; i < set.size(); ++i) {
    const auto& k = set.kernels[i];
    if (k.color.size() != channels) throw InvalidArgument("format_gset: kernel " + std::to_string(i) +
                                                          " has a different color channel count");
    out += std::to_string(i);
    for (int a = 0; a < 3; ++a) append(out, k.position[a]);
    append(out, k.rotation.w);
    append(out, k.rotation.x);
    append(out, k.rotation.y);
    append(out, k.rotation.z);
    for (int a = 0; a < 3; ++a) append(out, k.log_scale[a]);
    append(out, k.opacity);
    for (double c : k.color) append(out, c);
    if (k.label) out += ' ' + std::to_string(*k.label);
    out += '\n';
  }
  return out;
}

GaussianSet parse_gset(std::string_view text) {
  detail::LineReader r(text, "GSET");
  auto magic = r.next_tokens("magic");
  if (magic.size() != 2 || magic[0] != "GSET") throw MagicMismatch("GSET: line 1: missing 'GSET' magic");
  if (magic[1] != "1") r.fail("unsupported version '" + std::string(magic[1]) + "'");

  GaussianSet set;
  const auto role = r.header("role", 1);
  if (role[1] == "motion") set.role = Role::Motion;
  else if (role[1] == "appearance") set.role = Role::Appearance;
  else r.fail("unknown role '" + std::string(role[1]) + "'");
  set.frame = r.to_int<int>(r.header("frame", 1)[1]);
  const auto count = r.to_int<std::size_t>(r.header("count", 1)[1]);
  const auto channels = r.to_int<std::size_t>(r.header("color_channels", 1)[1]);
  const std::size_t fixed = 1 + 3 + 4 + 3 + 1 + channels;

  set.kernels.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (r.at_end())
      throw CountMismatch("GSET: header count " + std::to_string(count) + " but only " + std::to_string(i) +
                          " records present");
    const auto tok = r.next_tokens("kernel record");
    if (tok.size() != fixed && tok.size() != fixed + 1)
      r.fail("expected " + std::to_string(fixed) + " or " + std::to_string(fixed + 1) + " fields, got " +
             std::to_string(tok.size()));
    if (r.to_int<std::size_t>(tok[0]) != i) r.fail("record index out of sequence, expected " + std::to_string(i));
    GaussianKernel k;
    std::size_t t = 1;
    for (int a = 0; a < 3; ++a) k.position[a] = r.to_double(tok[t++]);
    k.rotation.w = r.to_double(tok[t++]);
    k.rotation.x = r.to_double(tok[t++]);
    k.rotation.y = r.to_double(tok[t++]);
    k.rotation.z = r.to_double(tok[t++]);
    for (int a = 0; a < 3; ++a) k.log_scale[a] = r.to_double(tok[t++]);
    k.opacity = r.to_double(tok[t++]);
    k.color.resize(channels);
    for (auto& c : k.color) c = r.to_double(tok[t++]);
    if (tok.size() == fixed + 1) k.label = r.to_int<int>(tok[t]);
    set.kernels.push_back(std::move(k));
  }
  if (!r.at_end()) {
    const std::size_t line = r.line_number() + 1;
    const auto rest = r.next_line("");
    if (detail::LineReader::split(rest).size() >= fixed)
      throw CountMismatch("GSET: header count " + std::to_string(count) + " but more records follow at line " +
                          std::to_string(line));
    throw TrailingData("GSET: trailing data at line " + std::to_string(line));
  }
  return set;
}

void write_gset(const std::filesystem::path& path, const GaussianSet& set) { write_file(path, format_gset(set)); }

GaussianSet read_gset(const std::filesystem::path& path) {
  return parse_gset(read_file(path));
}

void write_cloud(const std::filesystem::path& path, const ColoredCloud& cloud, int frame) {
  write_gset(path, cloud_to_set(cloud, frame));
}

ColoredCloud read_cloud(const std::filesystem::path& path) {
  const GaussianSet set = read_gset(path);
  if (set.role != Role::Appearance) throw ParseError("target cloud '" + path.string() + "' must have role appearance");
  return set_to_cloud(set);
}

}  // namespace gsm
