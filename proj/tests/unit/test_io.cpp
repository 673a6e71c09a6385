#include "doctest.h"

#include "gsm/io/config_file.hpp"
#include "gsm/io/errors.hpp"
#include "gsm/io/file.hpp"
#include "gsm/io/gmap.hpp"
#include "gsm/io/gset.hpp"
#include "gsm/io/image.hpp"
#include "gsm/io/labels.hpp"
#include "gsm/io/trace_csv.hpp"
#include "gsm/morton/attribute_map.hpp"
#include "gsm/morton/mapping.hpp"
#include "support/fd.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <limits>
#include <random>
#include <string>

using namespace gsm;
namespace fs = std::filesystem;

namespace {

bool same_bits(double a, double b) { return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b); }

bool bitwise_equal(const GaussianSet& a, const GaussianSet& b) {
  if (a.size() != b.size() || a.role != b.role || a.frame != b.frame) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto &x = a.kernels[i], &y = b.kernels[i];
    for (int d = 0; d < 3; ++d)
      if (!same_bits(x.position[d], y.position[d]) || !same_bits(x.log_scale[d], y.log_scale[d])) return false;
    if (!same_bits(x.rotation.w, y.rotation.w) || !same_bits(x.rotation.x, y.rotation.x) ||
        !same_bits(x.rotation.y, y.rotation.y) || !same_bits(x.rotation.z, y.rotation.z))
      return false;
    if (!same_bits(x.opacity, y.opacity) || x.color.size() != y.color.size() || x.label != y.label) return false;
    for (std::size_t c = 0; c < x.color.size(); ++c)
      if (!same_bits(x.color[c], y.color[c])) return false;
  }
  return true;
}

GaussianSet sample_set(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  GaussianSet s = gsm::testing::random_set(rng, n, 0.5, -6, -2);
  s.frame = 17;
  for (std::size_t i = 0; i < n; i += 3) s.kernels[i].label = static_cast<int>(i % 5);
  s.kernels[1].position.x() = 1e-300;
  s.kernels[2].position.y() = -0.0;
  s.kernels[3].opacity = 0.1 + 0.2;
  return s;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("gsm_io_test_" + name);
  fs::create_directories(p);
  return p;
}

void put_u32(std::string& bytes, std::size_t at, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) bytes[at + b] = static_cast<char>((v >> (8 * b)) & 0xff);
}

}  // namespace

TEST_CASE("shortest round-trip doubles") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 0.0, 5e-324})
  {
    const std::string text = format_double(v);
    double back = 1.0;
    std::from_chars(text.data(), text.data() + text.size(), back);
    CHECK(same_bits(back, v));
  }
  CHECK(format_double(0.001) == "0.001");
  CHECK(format_double(3.0) == "3");
}

TEST_CASE("gset round trip") {
  const GaussianSet s = sample_set(1000, 1);
  const std::string text = format_gset(s);
  CHECK(text.rfind("GSET 1\nrole appearance\nframe 17\ncount 1000\ncolor_channels 3\n", 0) == 0);
  CHECK(bitwise_equal(parse_gset(text), s));
  CHECK(format_gset(parse_gset(text)) == text);

  const fs::path dir = scratch_dir("gset");
  write_gset(dir / "a.gset", s);
  CHECK(bitwise_equal(read_gset(dir / "a.gset"), s));

  GaussianSet m = s;
  m.role = Role::Motion;
  CHECK(parse_gset(format_gset(m)).role == Role::Motion);

  ColoredCloud cloud = set_to_cloud(s);
  write_cloud(dir / "c.gset", cloud, 3);
  const ColoredCloud back = read_cloud(dir / "c.gset");
  CHECK(back.points == cloud.points);
  CHECK(back.colors == cloud.colors);
  CHECK_THROWS_AS(read_cloud(dir / "missing.gset"), IoError);
  fs::remove_all(dir);
}

TEST_CASE("gset corruption") {
  GaussianSet s = sample_set(4, 2);
  const std::string good = format_gset(s);
  CHECK_THROWS_AS(parse_gset("GSTE 1" + good.substr(6)), MagicMismatch);

  std::string extra = good;
  extra.replace(extra.find("count 4"), 7, "count 5");
  CHECK_THROWS_AS(parse_gset(extra), CountMismatch);
  std::string fewer = good;
  fewer.replace(fewer.find("count 4"), 7, "count 3");
  CHECK_THROWS_AS(parse_gset(fewer), CountMismatch);

  std::string nan = good;
  const std::size_t rec = nan.find("\n0 ") + 3;
  nan.replace(rec, nan.find(' ', rec) - rec, "nan");
  try {
    parse_gset(nan);
    FAIL("expected NonFiniteValue");
  } catch (const NonFiniteValue& e) {
    CHECK(std::string(e.what()).find("line 6") != std::string::npos);
  }
  std::string word = good;
  word.replace(rec, word.find(' ', rec) - rec, "abc");
  CHECK_THROWS_AS(parse_gset(word), ParseError);
  CHECK_THROWS_AS(parse_gset(good + "junk\n"), FormatError);
}

TEST_CASE("gmap round trip and corruption") {
  std::mt19937_64 rng(3);
  AttributeMap map(Resolution{7, 5}, 3);
  for (double& v : map.data) v = gsm::testing::uniform(rng, -2, 2);
  const std::string v2 = format_gmap(map, GmapPrecision::Float64);
  CHECK(v2.size() == 20 + 7 * 5 * 3 * 8);
  CHECK(v2.substr(0, 4) == "GMAP");
  CHECK(parse_gmap(v2) == map);

  const std::string v1 = format_gmap(map);
  CHECK(v1.size() == 20 + 7 * 5 * 3 * 4);
  const AttributeMap f = parse_gmap(v1);
  for (std::size_t i = 0; i < map.data.size(); ++i)
    CHECK(f.data[i] == static_cast<double>(static_cast<float>(map.data[i])));
  CHECK(format_gmap(f) == v1);

  const std::string short4 = v1.substr(0, v1.size() - 4);
  try {
    parse_gmap(short4);
    FAIL("expected TruncatedPayload");
  } catch (const TruncatedPayload& e) {
    const std::string msg = e.what();
    CHECK(msg.find("expected " + std::to_string(v1.size())) != std::string::npos);
    CHECK(msg.find("got " + std::to_string(v1.size() - 4)) != std::string::npos);
  }
  CHECK_THROWS_AS(parse_gmap(v1.substr(0, 10)), TruncatedPayload);
  CHECK_THROWS_AS(parse_gmap(v1 + "x"), TrailingData);
  CHECK_THROWS_AS(parse_gmap("GMAQ" + v1.substr(4)), MagicMismatch);
  std::string bad_version = v1;
  put_u32(bad_version, 4, 9);
  CHECK_THROWS_AS(parse_gmap(bad_version), ParseError);
  std::string inf = v2;
  const double big = std::numeric_limits<double>::infinity();
  std::memcpy(inf.data() + 20 + 8 * 4, &big, 8);
  CHECK_THROWS_AS(parse_gmap(inf), NonFiniteValue);

  const fs::path dir = scratch_dir("gmap");
  write_gmap(dir / "m.gmap", map, GmapPrecision::Float64);
  CHECK(read_gmap(dir / "m.gmap") == map);
  CHECK(read_file(dir / "m.gmap") == v2);
  fs::remove_all(dir);
}

TEST_CASE("mapping file") {
  std::mt19937_64 rng(4);
  PointList pts;
  for (int i = 0; i < 300; ++i)
    pts.emplace_back(gsm::testing::uniform(rng, 0, 1), gsm::testing::uniform(rng, 0, 1), gsm::testing::uniform(rng, 0, 1));
  const MortonMapping m = build_mapping(pts, Resolution{20, 20}, 6);
  const std::string text = format_mapping(m);
  const MortonMapping back = parse_mapping(text);
  CHECK(back == m);
  CHECK(format_mapping(back) == text);
  std::string dup = text;
  const std::size_t first = dup.find("\n0 ") + 1;
  const std::size_t second = dup.find("\n1 ") + 1;
  const std::string line0 = dup.substr(first + 2, dup.find('\n', first) - first - 2);
  dup.replace(second + 2, dup.find('\n', second) - second - 2, line0);
  CHECK_THROWS(parse_mapping(dup));
}

TEST_CASE("label csv") {
  GaussianSet s = sample_set(10, 5);
  for (auto& k : s.kernels) k.label.reset();
  s.kernels[2].label = 1;
  s.kernels[7].label = 0;
  const std::vector<std::string> names{"proximal", "distal"};
  const std::string csv = format_label_csv(s, names);
  CHECK(csv == "2,distal\n7,proximal\n");
  const auto parsed = parse_label_csv(csv, 10);
  CHECK(parsed[2] == "distal");
  CHECK(!parsed[0].has_value());
  GaussianSet t = s;
  for (auto& k : t.kernels) k.label.reset();
  std::vector<std::string> vocab{"distal"};
  apply_labels(t, parse_label_csv("2,distal\n7,proximal\n9,tip\n", 10), vocab);
  CHECK(vocab == std::vector<std::string>{"distal", "proximal", "tip"});
  CHECK(t.kernels[2].label == 0);
  CHECK(t.kernels[9].label == 2);
  CHECK_THROWS_AS(parse_label_csv("12,distal\n", 10), FormatError);
  CHECK_THROWS_AS(parse_label_csv("7,a\n2,b\n", 10), FormatError);
  CHECK_THROWS_AS(parse_label_csv("x,a\n", 10), FormatError);
}

TEST_CASE("images") {
  CHECK(quantize_channel(0.5) == 128);
  CHECK(quantize_channel(-1.0) == 0);
  CHECK(quantize_channel(2.0) == 255);
  CHECK(quantize_channel(1.0 / 255.0 * 3) == 3);

  RgbImage rgb{3, 2, {0, 0.2, 0.4, 0.6, 0.8, 1, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0.5, 0.5, 0.5}};
  const std::string ppm = format_ppm(rgb);
  CHECK(ppm.rfind("P6\n3 2\n255\n", 0) == 0);
  CHECK(ppm.size() == 11 + 18);
  const RgbImage back = parse_ppm(ppm);
  CHECK(back.width == 3);
  CHECK(format_ppm(back) == ppm);
  CHECK_THROWS_AS(parse_ppm(ppm.substr(0, ppm.size() - 1)), TruncatedPayload);
  CHECK_THROWS_AS(parse_ppm(ppm + "z"), TrailingData);
  CHECK_THROWS_AS(parse_ppm("P5" + ppm.substr(2)), MagicMismatch);

  AlphaImage a{2, 2, {0, 1.0 / 3, 2.0 / 3, 1}};
  const std::string pgm = format_pgm(a);
  CHECK(pgm.rfind("P5\n2 2\n255\n", 0) == 0);
  CHECK(format_pgm(parse_pgm(pgm)) == pgm);
  CHECK(parse_pgm(pgm).alpha[3] == 1.0);
}

TEST_CASE("trace csv") {
  EnergyTrace t;
  t.columns = {"iteration", "e_data", "total", "best_total"};
  t.rows = {{0, 0.125, 0.125, 0.125}, {1, 1.0 / 3.0, 1.0 / 3.0, 0.125}};
  const std::string csv = format_trace_csv(t);
  CHECK(csv.rfind("iteration,e_data,total,best_total\n0,0.125,", 0) == 0);
  const EnergyTrace back = parse_trace_csv(csv);
  CHECK(back.columns == t.columns);
  CHECK(back.rows == t.rows);
  CHECK_THROWS_AS(parse_trace_csv("iteration,a\n0,1,2\n"), FormatError);
}

TEST_CASE("config file") {
  const PipelineConfig c = parse_config("# comment\n\nl = 0.001\n");
  CHECK(c.track.length_scale == 0.001);
  CHECK(c.reperform.length_scale == 0.001);

  const PipelineConfig d = parse_config("lambda_sem=0.5\niterations_align = 12\nseed = 9\nprealign = 0\n");
  CHECK(d.reperform.lambda_sem == 0.5);
  CHECK(d.reperform.align_iterations == 12);
  CHECK(d.track.seed == 9);
  CHECK(!d.reperform.centroid_prealign);
  try {
    parse_config("l = 0.001\nlambda_bogus = 1\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    CHECK(std::string(e.what()).find("lambda_bogus") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config("l = 1\nl = 2\n"), ParseError);
  CHECK_THROWS_AS(parse_config("l = abc\n"), ParseError);
  CHECK_THROWS_AS(parse_config("l 0.1\n"), ParseError);
  CHECK_THROWS_AS(parse_config("lambda_1 = -1\n"), ParseError);

  PipelineConfig e;
  e.track.lambda_iso = 0.123;
  e.reperform.mask_resolution = 48;
  const PipelineConfig round = parse_config(format_config(e));
  CHECK(round.track.lambda_iso == 0.123);
  CHECK(round.reperform.mask_resolution == 48);
  CHECK(format_config(round) == format_config(e));
}
