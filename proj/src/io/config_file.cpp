#include "gsm/io/config_file.hpp"

#include "gsm/core/error.hpp"
#include "gsm/io/file.hpp"
#include "text_reader.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace gsm {

namespace {

struct KeyDef {
  std::string name;
  std::function<void(PipelineConfig&, const detail::LineReader&, std::string_view)> set;
  std::function<std::string(const PipelineConfig&)> get;
};

template <class T>
std::string int_text(T v) {
  return std::to_string(v);
}

const std::vector<KeyDef>& key_defs() {
  using R = detail::LineReader;
  static const std::vector<KeyDef> defs = [] {
    std::vector<KeyDef> d;
    auto real = [&d](std::string name, std::function<std::vector<double*>(PipelineConfig&)> field) {
      d.push_back({name,
                   [field](PipelineConfig& c, const R& r, std::string_view v) {
                     const double x = r.to_double(v);
                     for (double* f : field(c)) *f = x;
                   },
                   [field](const PipelineConfig& c) {
                     auto& m = const_cast<PipelineConfig&>(c);
                     return format_double(*field(m).front());
                   }});
    };
    auto count = [&d](std::string name, std::function<std::vector<std::size_t*>(PipelineConfig&)> field) {
      d.push_back({name,
                   [field](PipelineConfig& c, const R& r, std::string_view v) {
                     const auto x = r.to_int<std::size_t>(v);
                     for (std::size_t* f : field(c)) *f = x;
                   },
                   [field](const PipelineConfig& c) {
                     auto& m = const_cast<PipelineConfig&>(c);
                     return int_text(*field(m).front());
                   }});
    };
    auto integer = [&d](std::string name, std::function<int*(PipelineConfig&)> field) {
      d.push_back({name,
                   [field](PipelineConfig& c, const R& r, std::string_view v) {
                     const int x = r.to_int<int>(v);
                     if (x <= 0) r.fail("'" + std::string(v) + "' must be a positive integer");
                     *field(c) = x;
                   },
                   [field](const PipelineConfig& c) { return int_text(*field(const_cast<PipelineConfig&>(c))); }});
    };
    real("l", [](PipelineConfig& c) { return std::vector<double*>{&c.track.length_scale, &c.reperform.length_scale}; });
    real("lambda_iso", [](PipelineConfig& c) { return std::vector<double*>{&c.track.lambda_iso}; });
    real("lambda_size", [](PipelineConfig& c) { return std::vector<double*>{&c.track.lambda_size}; });
    real("lambda_sem", [](PipelineConfig& c) { return std::vector<double*>{&c.reperform.lambda_sem}; });
    real("lambda_1", [](PipelineConfig& c) { return std::vector<double*>{&c.reperform.lambda_1}; });
    real("lambda_2", [](PipelineConfig& c) { return std::vector<double*>{&c.reperform.lambda_2}; });
    real("iso_ratio", [](PipelineConfig& c) { return std::vector<double*>{&c.track.iso_ratio}; });
    real("size_alpha", [](PipelineConfig& c) { return std::vector<double*>{&c.track.size_alpha}; });
    count("k_neighbors",
          [](PipelineConfig& c) { return std::vector<std::size_t*>{&c.track.k_neighbors, &c.reperform.k_neighbors}; });
    count("clusters_per_label", [](PipelineConfig& c) { return std::vector<std::size_t*>{&c.reperform.clusters_per_label}; });
    integer("map_width", [](PipelineConfig& c) { return &c.map.width; });
    integer("map_height", [](PipelineConfig& c) { return &c.map.height; });
    integer("quant_bits", [](PipelineConfig& c) { return &c.map.quant_bits; });
    integer("mask_resolution", [](PipelineConfig& c) { return &c.reperform.mask_resolution; });
    count("iterations_init", [](PipelineConfig& c) { return std::vector<std::size_t*>{&c.track.init_iterations}; });
    count("iterations_track", [](PipelineConfig& c) { return std::vector<std::size_t*>{&c.track.iterations}; });
    count("iterations_align", [](PipelineConfig& c) { return std::vector<std::size_t*>{&c.reperform.align_iterations}; });
    count("iterations_transfer",
          [](PipelineConfig& c) { return std::vector<std::size_t*>{&c.reperform.transfer_iterations}; });
    auto lr = [&real](const char* name, double LearningRates::*member) {
      real(name, [member](PipelineConfig& c) {
        return std::vector<double*>{&(c.track.lr.*member), &(c.reperform.lr.*member)};
      });
    };
    lr("lr_position", &LearningRates::position);
    lr("lr_rotation", &LearningRates::rotation);
    lr("lr_scale", &LearningRates::log_scale);
    lr("lr_opacity", &LearningRates::opacity);
    lr("lr_color", &LearningRates::color);
    lr("lr_final_ratio", &LearningRates::final_ratio);
    d.push_back({"prealign",
                 [](PipelineConfig& c, const R& r, std::string_view v) {
                   if (v != "0" && v != "1") r.fail("prealign must be 0 or 1");
                   c.reperform.centroid_prealign = v == "1";
                 },
                 [](const PipelineConfig& c) { return std::string(c.reperform.centroid_prealign ? "1" : "0"); }});
    d.push_back({"seed",
                 [](PipelineConfig& c, const R& r, std::string_view v) {
                   c.track.seed = c.reperform.seed = r.to_int<std::uint64_t>(v);
                 },
                 [](const PipelineConfig& c) { return int_text(c.track.seed); }});
    return d;
  }();
  return defs;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& d : key_defs()) k.push_back(d.name);
    return k;
  }();
  return keys;
}

PipelineConfig parse_config(std::string_view text, const PipelineConfig& base) {
  PipelineConfig cfg = base;
  detail::LineReader r(text, "config");
  std::set<std::string, std::less<>> seen;
  while (!r.at_end()) {
    const std::string_view raw = r.next_line("config line");
    const auto tok = detail::LineReader::split(raw);
    if (tok.empty() || tok[0].front() == '#') continue;
    const std::size_t eq = raw.find('=');
    if (eq == std::string_view::npos) r.fail("expected 'key = value'");
    const auto key_tok = detail::LineReader::split(raw.substr(0, eq));
    const auto val_tok = detail::LineReader::split(raw.substr(eq + 1));
    if (key_tok.size() != 1) r.fail("expected a single key before '='");
    if (val_tok.size() != 1) r.fail("expected a single value after '='");
    const std::string_view key = key_tok[0];
    const auto& defs = key_defs();
    auto it = std::find_if(defs.begin(), defs.end(), [&](const KeyDef& d) { return d.name == key; });
    if (it == defs.end()) r.fail("unknown key '" + std::string(key) + "'");
    if (!seen.insert(std::string(key)).second) r.fail("repeated key '" + std::string(key) + "'");
    it->set(cfg, r, val_tok[0]);
    try {
      cfg.track.validate();
      cfg.reperform.validate();
    } catch (const InvalidArgument& e) {
      r.fail(std::string(key) + ": " + e.what());
    }
  }
  return cfg;
}

std::string format_config(const PipelineConfig& cfg) {
  std::string out;
  for (const auto& d : key_defs()) out += d.name + " = " + d.get(cfg) + "\n";
  return out;
}

PipelineConfig read_config(const std::filesystem::path& path, const PipelineConfig& base) {
  return parse_config(read_file(path), base);
}

}  // namespace gsm
