#include "gsm/io/gmap.hpp"

#include "gsm/io/errors.hpp"
#include "gsm/io/file.hpp"
#include "text_reader.hpp"

#include <bit>
#include <cmath>
#include <limits>

namespace gsm {

namespace {

constexpr std::size_t kHeaderBytes = 20;

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFFu));
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFFu));
}

std::uint32_t get_u32(std::string_view b, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(b[at + i])) << (8 * i);
  return v;
}

std::uint64_t get_u64(std::string_view b, std::size_t at) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(b[at + i])) << (8 * i);
  return v;
}

}  // namespace

std::string format_gmap(const AttributeMap& map, GmapPrecision precision) {
  if (map.resolution.width < 0 || map.resolution.height < 0 || map.channels < 0)
    throw InvalidArgument("format_gmap: negative dimensions");
  const std::size_t n = map.resolution.pixels() * static_cast<std::size_t>(map.channels);
  if (map.data.size() != n) throw InvalidArgument("format_gmap: data size does not match dimensions");
  const bool wide = precision == GmapPrecision::Float64;
  std::string out = "GMAP";
  out.reserve(kHeaderBytes + n * (wide ? 8 : 4));
  put_u32(out, static_cast<std::uint32_t>(precision));
  put_u32(out, static_cast<std::uint32_t>(map.resolution.width));
  put_u32(out, static_cast<std::uint32_t>(map.resolution.height));
  put_u32(out, static_cast<std::uint32_t>(map.channels));
  for (std::size_t i = 0; i < n; ++i) {
    const double v = map.data[i];
    if (!std::isfinite(v)) throw InvalidArgument("format_gmap: non-finite value at element " + std::to_string(i));
    if (wide) {
      put_u64(out, std::bit_cast<std::uint64_t>(v));
    } else {
      const auto f = static_cast<float>(v);
      if (!std::isfinite(f))
        throw InvalidArgument("format_gmap: element " + std::to_string(i) + " overflows binary32");
      put_u32(out, std::bit_cast<std::uint32_t>(f));
    }
  }
  return out;
}

AttributeMap parse_gmap(std::string_view bytes) {
  if (bytes.size() < 4 || bytes.substr(0, 4) != "GMAP") throw MagicMismatch("GMAP: bad magic at byte 0");
  if (bytes.size() < kHeaderBytes)
    throw TruncatedPayload("GMAP: header truncated: expected " + std::to_string(kHeaderBytes) + " bytes, got " +
                           std::to_string(bytes.size()));
  const std::uint32_t version = get_u32(bytes, 4);
  if (version != 1 && version != 2) throw ParseError("GMAP: byte 4: unsupported version " + std::to_string(version));
  const std::uint32_t w = get_u32(bytes, 8), h = get_u32(bytes, 12), c = get_u32(bytes, 16);
  constexpr auto kIntMax = static_cast<std::uint32_t>(std::numeric_limits<int>::max());
  if (w > kIntMax || h > kIntMax || c > kIntMax) throw ParseError("GMAP: byte 8: dimensions too large");
  const std::size_t elem = version == 2 ? 8 : 4;
  const std::size_t n = static_cast<std::size_t>(w) * h * c;
  const std::size_t expected = kHeaderBytes + n * elem;
  if (bytes.size() < expected)
    throw TruncatedPayload("GMAP: payload truncated: expected " + std::to_string(expected) + " bytes, got " +
                           std::to_string(bytes.size()));
  if (bytes.size() > expected)
    throw TrailingData("GMAP: " + std::to_string(bytes.size() - expected) + " trailing bytes after byte " +
                       std::to_string(expected));

  AttributeMap map(Resolution{static_cast<int>(w), static_cast<int>(h)}, static_cast<int>(c));
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t at = kHeaderBytes + i * elem;
    const double v = elem == 8 ? std::bit_cast<double>(get_u64(bytes, at))
                               : static_cast<double>(std::bit_cast<float>(get_u32(bytes, at)));
    if (!std::isfinite(v)) throw NonFiniteValue("GMAP: non-finite value at byte " + std::to_string(at));
    map.data[i] = v;
  }
  return map;
}

void write_gmap(const std::filesystem::path& path, const AttributeMap& map, GmapPrecision precision) {
  write_file(path, format_gmap(map, precision));
}

AttributeMap read_gmap(const std::filesystem::path& path) { return parse_gmap(read_file(path)); }

std::string format_mapping(const MortonMapping& mapping) {
  const Box& b = mapping.bbox();
  std::string out = "MMAP 1\nresolution " + std::to_string(mapping.resolution().width) + " " +
                    std::to_string(mapping.resolution().height) + "\nbits " + std::to_string(mapping.bits()) +
                    "\nbbox";
  for (int a = 0; a < 3; ++a) out += " " + format_double(b.min[a]);
  for (int a = 0; a < 3; ++a) out += " " + format_double(b.max[a]);
  out += "\ncount " + std::to_string(mapping.valid_count()) + "\n";
  for (std::size_t i = 0; i < mapping.valid_count(); ++i) {
    const Pixel& p = mapping.uv()[i];
    out += std::to_string(i) + " " + std::to_string(p.u) + " " + std::to_string(p.v) + "\n";
  }
  return out;
}

MortonMapping parse_mapping(std::string_view text) {
  detail::LineReader r(text, "MMAP");
  auto magic = r.next_tokens("magic");
  if (magic.size() != 2 || magic[0] != "MMAP") throw MagicMismatch("MMAP: line 1: missing 'MMAP' magic");
  if (magic[1] != "1") r.fail("unsupported version '" + std::string(magic[1]) + "'");
  const auto res = r.header("resolution", 2);
  Resolution resolution{r.to_int<int>(res[1]), r.to_int<int>(res[2])};
  const int bits = r.to_int<int>(r.header("bits", 1)[1]);
  const auto bb = r.header("bbox", 6);
  Box box;
  for (int a = 0; a < 3; ++a) {
    box.min[a] = r.to_double(bb[1 + a]);
    box.max[a] = r.to_double(bb[4 + a]);
  }
  const auto count = r.to_int<std::size_t>(r.header("count", 1)[1]);
  std::vector<Pixel> uv;
  uv.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (r.at_end())
      throw CountMismatch("MMAP: header count " + std::to_string(count) + " but only " + std::to_string(i) +
                          " entries present");
    const auto tok = r.next_tokens("mapping entry");
    if (tok.size() != 3) r.fail("expected 'index u v'");
    if (r.to_int<std::size_t>(tok[0]) != i) r.fail("entry index out of sequence, expected " + std::to_string(i));
    uv.push_back(Pixel{r.to_int<int>(tok[1]), r.to_int<int>(tok[2])});
  }
  if (!r.at_end()) {
    const auto line = r.line_number() + 1;
    const auto rest = detail::LineReader::split(r.next_line(""));
    if (rest.size() == 3)
      throw CountMismatch("MMAP: header count " + std::to_string(count) + " but more entries follow at line " +
                          std::to_string(line));
    throw TrailingData("MMAP: trailing data at line " + std::to_string(line));
  }
  try {
    return MortonMapping(resolution, std::move(uv), bits, box);
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("MMAP: ") + e.what());
  }
}

void write_mapping(const std::filesystem::path& path, const MortonMapping& mapping) {
  write_file(path, format_mapping(mapping));
}

MortonMapping read_mapping(const std::filesystem::path& path) { return parse_mapping(read_file(path)); }

}  // namespace gsm
