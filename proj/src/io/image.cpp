#include "gsm/io/image.hpp"

#include "gsm/io/errors.hpp"
#include "gsm/io/file.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace gsm {

namespace {

std::string header(const char* magic, int w, int h) {
  return std::string(magic) + "\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
}

struct Header {
  int width = 0;
  int height = 0;
  std::size_t payload = 0;  // byte offset of the first sample
};

Header parse_header(std::string_view bytes, const char* magic, const char* format) {
  if (bytes.size() < 2 || bytes.substr(0, 2) != magic) throw MagicMismatch(std::string(format) + ": bad magic at byte 0");
  std::size_t pos = 2;
  long fields[3] = {0, 0, 0};
  for (long& f : fields) {
    const std::size_t ws = pos;
    while (pos < bytes.size() && std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
    if (pos == ws) throw ParseError(std::string(format) + ": byte " + std::to_string(pos) + ": expected whitespace");
    const std::size_t start = pos;
    while (pos < bytes.size() && std::isdigit(static_cast<unsigned char>(bytes[pos])) && pos - start < 9) {
      f = f * 10 + (bytes[pos] - '0');
      ++pos;
    }
    if (pos == start) {
      if (pos >= bytes.size()) throw TruncatedPayload(std::string(format) + ": header truncated at byte " + std::to_string(pos));
      throw ParseError(std::string(format) + ": byte " + std::to_string(pos) + ": expected a decimal field");
    }
  }
  if (fields[2] != 255) throw ParseError(std::string(format) + ": maxval must be 255");
  if (fields[0] <= 0 || fields[1] <= 0) throw ParseError(std::string(format) + ": dimensions must be positive");
  if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos])))
    throw ParseError(std::string(format) + ": byte " + std::to_string(pos) + ": expected one whitespace after maxval");
  return {static_cast<int>(fields[0]), static_cast<int>(fields[1]), pos + 1};
}

void check_payload(std::string_view bytes, const Header& h, std::size_t samples, const char* format) {
  const std::size_t expected = h.payload + samples;
  if (bytes.size() < expected)
    throw TruncatedPayload(std::string(format) + ": payload truncated: expected " + std::to_string(expected) +
                           " bytes, got " + std::to_string(bytes.size()));
  if (bytes.size() > expected)
    throw TrailingData(std::string(format) + ": trailing bytes after byte " + std::to_string(expected));
}

}  // namespace

unsigned char quantize_channel(double v) {
  if (std::isnan(v)) throw InvalidArgument("quantize_channel: NaN sample");
  const double c = std::clamp(v, 0.0, 1.0);
  return static_cast<unsigned char>(std::floor(c * 255.0 + 0.5));
}

std::string format_ppm(const RgbImage& image) {
  const std::size_t n = static_cast<std::size_t>(image.width) * static_cast<std::size_t>(image.height) * 3;
  if (image.width <= 0 || image.height <= 0 || image.rgb.size() != n)
    throw InvalidArgument("format_ppm: image dimensions do not match its data");
  std::string out = header("P6", image.width, image.height);
  for (double v : image.rgb) out.push_back(static_cast<char>(quantize_channel(v)));
  return out;
}

std::string format_pgm(const AlphaImage& image) {
  const std::size_t n = static_cast<std::size_t>(image.width) * static_cast<std::size_t>(image.height);
  if (image.width <= 0 || image.height <= 0 || image.alpha.size() != n)
    throw InvalidArgument("format_pgm: image dimensions do not match its data");
  std::string out = header("P5", image.width, image.height);
  for (double v : image.alpha) out.push_back(static_cast<char>(quantize_channel(v)));
  return out;
}

RgbImage parse_ppm(std::string_view bytes) {
  const Header h = parse_header(bytes, "P6", "PPM");
  const std::size_t n = static_cast<std::size_t>(h.width) * static_cast<std::size_t>(h.height) * 3;
  check_payload(bytes, h, n, "PPM");
  RgbImage img{h.width, h.height, std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) img.rgb[i] = static_cast<unsigned char>(bytes[h.payload + i]) / 255.0;
  return img;
}

AlphaImage parse_pgm(std::string_view bytes) {
  const Header h = parse_header(bytes, "P5", "PGM");
  const std::size_t n = static_cast<std::size_t>(h.width) * static_cast<std::size_t>(h.height);
  check_payload(bytes, h, n, "PGM");
  AlphaImage img{h.width, h.height, std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) img.alpha[i] = static_cast<unsigned char>(bytes[h.payload + i]) / 255.0;
  return img;
}

void write_ppm(const std::filesystem::path& path, const RgbImage& image) { write_file(path, format_ppm(image)); }
void write_pgm(const std::filesystem::path& path, const AlphaImage& image) { write_file(path, format_pgm(image)); }
RgbImage read_ppm(const std::filesystem::path& path) { return parse_ppm(read_file(path)); }
AlphaImage read_pgm(const std::filesystem::path& path) { return parse_pgm(read_file(path)); }

}  // namespace gsm
