#include "gsm/core/error.hpp"
#include "gsm/core/neighbor_graph.hpp"
#include "gsm/core/parallel.hpp"
#include "gsm/energy/gradcheck.hpp"
#include "gsm/io/config_file.hpp"
#include "gsm/io/errors.hpp"
#include "gsm/io/file.hpp"
#include "gsm/io/gmap.hpp"
#include "gsm/io/gset.hpp"
#include "gsm/io/image.hpp"
#include "gsm/io/labels.hpp"
#include "gsm/io/trace_csv.hpp"
#include "gsm/morton/mapping.hpp"
#include "gsm/pipeline/reperform.hpp"
#include "gsm/pipeline/tracking.hpp"
#include "gsm/render/camera.hpp"
#include "gsm/render/splat.hpp"
#include "gsm/synth/scene.hpp"
#include "gsm/warp/regressor.hpp"
#include "gsm/warp/warp.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace gsm;

namespace {

struct Globals {
  int threads = 0;
  std::string config;
  std::optional<std::uint64_t> seed;

  PipelineConfig load() const {
    PipelineConfig cfg = config.empty() ? PipelineConfig{} : read_config(config);
    if (seed) cfg.track.seed = cfg.reperform.seed = *seed;
    return cfg;
  }
};

std::string numbered(const std::string& stem, int frame, const std::string& ext) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "_%04d", frame);
  return stem + buf + ext;
}

void make_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

GaussianSet load_labeled(const std::string& path, const std::string& label_csv, std::vector<std::string>& vocab) {
  GaussianSet set = read_gset(path);
  if (!label_csv.empty()) apply_labels(set, read_label_csv(label_csv, set.size()), vocab);
  return set;
}

// ---------------------------------------------------------------------------------------------

struct SynthArgs {
  std::string kind = "twolink";
  std::string out;
  std::size_t frames = 10;
  double theta = std::numbers::pi / 3;
  std::size_t motion = 500;
  std::size_t appearance = 5000;
  double radius = 0.05;
  double distal_radius = 0.05;
  std::vector<double> origin{0, 0, 0};
  std::vector<double> rigid_step{0, 0, 0};
  std::vector<double> rigid_axis{0, 0, 1};
  double rigid_angle = 0.0;
  double motion_log_scale = std::log(0.02);
  double appearance_log_scale = std::log(0.008);
};

void run_synth(const SynthArgs& a, const Globals& g) {
  SceneParams p;
  p.radius = a.radius;
  p.distal_radius = a.distal_radius;
  p.origin = Vec3(a.origin[0], a.origin[1], a.origin[2]);
  const SyntheticScene scene =
      make_scene(parse_scene_kind(a.kind), p, {a.motion, a.appearance}, g.seed.value_or(g.load().track.seed));
  std::vector<FrameParams> schedule = sweep_schedule(a.frames, a.theta);
  const auto rigid = rigid_schedule(a.frames, Vec3(a.rigid_step[0], a.rigid_step[1], a.rigid_step[2]),
                                    Vec3(a.rigid_axis[0], a.rigid_axis[1], a.rigid_axis[2]), a.rigid_angle);
  for (std::size_t t = 0; t < schedule.size(); ++t) {
    schedule[t].global_rotation = rigid[t].global_rotation;
    schedule[t].global_translation = rigid[t].global_translation;
  }
  const AnimatedSequence seq = animate(scene, schedule);

  const fs::path out(a.out);
  make_dir(out / "targets");
  const GaussianSet motion = make_motion_set(scene, a.motion_log_scale);
  const GaussianSet app = make_appearance_set(scene, a.appearance_log_scale);
  write_gset(out / "motion_init.gset", motion);
  write_gset(out / "appearance.gset", app);
  write_label_csv(out / "motion_labels.csv", motion, scene.label_names);
  write_label_csv(out / "labels.csv", app, scene.label_names);
  for (std::size_t t = 0; t < seq.frames.size(); ++t)
    write_cloud(out / "targets" / numbered("frame", static_cast<int>(t), ".gset"), seq.frames[t], static_cast<int>(t));
}

struct InitArgs {
  std::string motion, target, out, trace;
};

void run_init(const InitArgs& a, const Globals& g) {
  const PipelineConfig cfg = g.load();
  const InitResult r = init_canonical(read_gset(a.motion), read_cloud(a.target), cfg.track);
  write_gset(a.out, r.canonical);
  if (!a.trace.empty()) write_trace_csv(a.trace, r.trace);
}

struct TrackArgs {
  std::string canonical, out_dir;
  std::vector<std::string> targets;
  int first_frame = 1;
};

void run_track(const TrackArgs& a, const Globals& g) {
  const PipelineConfig cfg = g.load();
  std::vector<ColoredCloud> clouds;
  for (const auto& t : a.targets) clouds.push_back(read_cloud(t));
  const TrackResult r = track_sequence(read_gset(a.canonical), clouds, cfg.track, a.first_frame);
  const fs::path out(a.out_dir);
  make_dir(out);
  for (std::size_t t = 0; t < r.frames.size(); ++t) {
    write_gset(out / numbered("motion", r.frames[t].frame, ".gset"), r.frames[t]);
    write_trace_csv(out / numbered("trace", r.frames[t].frame, ".csv"), r.traces[t]);
  }
}

struct WarpArgs {
  std::string appearance, canonical, out_dir;
  std::vector<std::string> frames;
};

void run_warp(const WarpArgs& a, const Globals& g) {
  const PipelineConfig cfg = g.load();
  const GaussianSet app = read_gset(a.appearance);
  const GaussianSet canon = read_gset(a.canonical);
  const NeighborGraph graph =
      build_skinning_graph(app.positions(), canon.positions(), cfg.track.k_neighbors, cfg.track.length_scale);
  const fs::path out(a.out_dir);
  make_dir(out);
  for (const auto& f : a.frames) {
    const GaussianSet motion = read_gset(f);
    FrameMotion fm = relative_motion(canon, motion);
    GaussianSet warped = warp_appearance(app, fm, graph);
    warped.frame = motion.frame;
    write_gset(out / numbered("warped", motion.frame, ".gset"), warped);
  }
}

struct MapArgs {
  std::string set, canonical, out_dir;
  int precision = 64;
};

GmapPrecision precision_of(int bits) {
  if (bits == 32) return GmapPrecision::Float32;
  if (bits == 64) return GmapPrecision::Float64;
  throw InvalidArgument("--precision must be 32 or 64");
}

void run_map(const MapArgs& a, const Globals& g) {
  const PipelineConfig cfg = g.load();
  const GmapPrecision prec = precision_of(a.precision);
  const GaussianSet set = read_gset(a.set);
  const GaussianSet canon = a.canonical.empty() ? set : read_gset(a.canonical);
  const MortonMapping mapping =
      build_mapping(canon.positions(), Resolution{cfg.map.width, cfg.map.height}, cfg.map.quant_bits);
  const GaussianMaps maps = disassemble(set, mapping);
  const fs::path out(a.out_dir);
  make_dir(out);
  write_mapping(out / "mapping.mmap", mapping);
  write_gmap(out / "position.gmap", maps.position, prec);
  write_gmap(out / "rotation.gmap", maps.attributes.rotation, prec);
  write_gmap(out / "shape.gmap", maps.attributes.shape, prec);
  write_gmap(out / "color.gmap", maps.attributes.color, prec);
}

struct RegressArgs {
  std::string appearance, canonical, motion, mapping, position, out_dir;
  int precision = 64;
};

void run_regress(const RegressArgs& a, const Globals& g) {
  const PipelineConfig cfg = g.load();
  const GmapPrecision prec = precision_of(a.precision);
  const GaussianSet app = read_gset(a.appearance);
  const GaussianSet canon = read_gset(a.canonical);
  const GaussianSet motion = read_gset(a.motion);
  const MortonMapping mapping = read_mapping(a.mapping);
  const AttributeMap position = read_gmap(a.position);
  const NeighborGraph graph =
      build_skinning_graph(app.positions(), canon.positions(), cfg.track.k_neighbors, cfg.track.length_scale);
  const BaselineRegressor regressor(app, relative_motion(canon, motion), graph);
  GaussianMaps maps{position, regressor.regress(position, mapping)};
  const fs::path out(a.out_dir);
  make_dir(out);
  write_gmap(out / "rotation.gmap", maps.attributes.rotation, prec);
  write_gmap(out / "shape.gmap", maps.attributes.shape, prec);
  write_gmap(out / "color.gmap", maps.attributes.color, prec);
  write_gset(out / "assembled.gset", assemble(maps, mapping, Role::Appearance, motion.frame, app.labels()));
}

struct AlignArgs {
  std::string source, source_labels, reference, driver, driver_labels, out, trace;
};

void run_align(const AlignArgs& a, const Globals& g) {
  const PipelineConfig cfg = g.load();
  std::vector<std::string> vocab;
  const GaussianSet source = load_labeled(a.source, a.source_labels, vocab);
  const GaussianSet driver = load_labeled(a.driver, a.driver_labels, vocab);
  const GaussianSet ref = a.reference.empty() ? source : read_gset(a.reference);
  const AlignResult r = align_canonical(source, ref, driver, cfg.reperform);
  write_gset(a.out, r.aligned);
  if (!a.trace.empty()) write_trace_csv(a.trace, r.trace);
}

struct TransferArgs {
  std::string aligned, source, driver_canonical, out_dir;
  std::vector<std::string> driver_frames;
};

void run_transfer(const TransferArgs& a, const Globals& g) {
  const PipelineConfig cfg = g.load();
  const GaussianSet aligned = read_gset(a.aligned);
  const GaussianSet source = read_gset(a.source);
  const GaussianSet drv = read_gset(a.driver_canonical);
  std::vector<FrameMotion> motions;
  for (const auto& f : a.driver_frames) {
    const GaussianSet m = read_gset(f);
    FrameMotion fm = relative_motion(drv, m);
    fm.frame = m.frame;
    motions.push_back(std::move(fm));
  }
  const NeighborGraph graph = build_skinning_graph(aligned.positions(), drv.positions(), cfg.reperform.k_neighbors,
                                                   cfg.reperform.length_scale);
  const TransferResult r = transfer_motion(aligned, source, motions, graph, cfg.reperform);
  const fs::path out(a.out_dir);
  make_dir(out);
  for (std::size_t t = 0; t < r.frames.size(); ++t) {
    write_gset(out / numbered("transfer", r.frames[t].frame, ".gset"), r.frames[t]);
    write_trace_csv(out / numbered("trace", r.frames[t].frame, ".csv"), r.traces[t]);
  }
}

struct RenderArgs {
  std::string set, view = "+z", out_prefix;
  int resolution = 256;
  double margin = 0.1;
};

void run_render(const RenderArgs& a, const Globals&) {
  const GaussianSet set = read_gset(a.set);
  if (set.empty()) throw InvalidArgument("render: empty set");
  const Box box = bounding_box(set.positions());
  const OrthoCamera probe = OrthoCamera::axis_view(parse_view_axis(a.view), Vec3::Zero(), 1, 1, 1, 1);
  const Vec3 extent = box.extent().cwiseMax(Vec3::Constant(1e-6)) * (1.0 + 2.0 * a.margin);
  const double w = (probe.rotation.row(0).cwiseAbs() * extent)(0);
  const double h = (probe.rotation.row(1).cwiseAbs() * extent)(0);
  const double px = std::max(w, h) / a.resolution;
  const int iw = std::max(1, static_cast<int>(std::ceil(w / px - 1e-9)));
  const int ih = std::max(1, static_cast<int>(std::ceil(h / px - 1e-9)));
  const OrthoCamera cam =
      OrthoCamera::axis_view(parse_view_axis(a.view), 0.5 * (box.min + box.max), iw * px, ih * px, iw, ih);
  SplatOptions opt;
  opt.keep_footprints = false;
  const RenderOutput img = splat(set, cam, opt);
  write_ppm(a.out_prefix + ".ppm", img.rgb_image());
  write_pgm(a.out_prefix + ".pgm", img.alpha_image());
  if (img.skipped > 0) std::cerr << "gsm: note: " << img.skipped << " kernels skipped (degenerate footprint)\n";
}

struct LocalityArgs {
  std::size_t count = 10000;
  int width = 100, height = 100, bits = 10;
  std::string out;
};

void run_locality(const LocalityArgs& a, const Globals& g) {
  std::mt19937_64 rng(g.seed.value_or(g.load().track.seed));
  PointList pts(a.count);
  for (auto& p : pts)
    for (int d = 0; d < 3; ++d) p[d] = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  const Resolution res{a.width, a.height};
  const double morton = locality_score(build_mapping(pts, res, a.bits), pts);
  const double ysort = locality_score(build_y_sort_mapping(pts, res), pts);
  const double random = locality_score(build_random_mapping(pts.size(), res, rng()), pts);
  const std::string csv = "mapping,locality_score\nmorton," + format_double(morton) + "\ny_sort," +
                          format_double(ysort) + "\nrandom," + format_double(random) + "\n";
  if (a.out.empty()) std::cout << csv;
  else write_file(a.out, csv);
}

struct GradcheckArgs {
  std::size_t instances = 20;
};

int run_gradcheck_cmd(const GradcheckArgs& a, const Globals& g) {
  GradcheckOptions opt;
  opt.instances = a.instances;
  bool ok = true;
  for (const auto& r : run_gradcheck(g.seed.value_or(1), opt)) {
    std::printf("%-8s max_rel_err %.3e tol %.0e %s\n", r.term.c_str(), r.max_relative_error, r.tolerance,
                r.passed() ? "ok" : "FAIL");
    ok = ok && r.passed();
  }
  std::fflush(stdout);
  if (!ok) std::cerr << "gsm: error: gradient check exceeded tolerance\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian motion tracking, mapping and re-performance"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
  app.add_option("--config", g.config, "key = value config file");
  app.add_option("--seed", g.seed, "Seed (overrides the config)");
  app.fallthrough();

  SynthArgs sa;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic scene and its animated targets");
  synth->add_option("--kind", sa.kind, "twolink | cylinder");
  synth->add_option("--out", sa.out, "Output directory")->required();
  synth->add_option("--frames", sa.frames, "Frame count including the canonical frame 0")->check(CLI::PositiveNumber);
  synth->add_option("--theta", sa.theta, "Final joint angle (twolink) or curvature (cylinder)");
  synth->add_option("--motion", sa.motion, "Motion samples");
  synth->add_option("--appearance", sa.appearance, "Appearance samples");
  synth->add_option("--radius", sa.radius);
  synth->add_option("--distal-radius", sa.distal_radius);
  synth->add_option("--origin", sa.origin)->expected(3);
  synth->add_option("--rigid-step", sa.rigid_step, "Global translation per frame")->expected(3);
  synth->add_option("--rigid-axis", sa.rigid_axis)->expected(3);
  synth->add_option("--rigid-angle", sa.rigid_angle, "Global rotation per frame (rad)");
  synth->add_option("--motion-log-scale", sa.motion_log_scale);
  synth->add_option("--appearance-log-scale", sa.appearance_log_scale);

  InitArgs ia;
  auto* init = app.add_subcommand("init", "Fit the canonical motion set to frame 0");
  init->add_option("--motion", ia.motion, "Initial motion GSET")->required();
  init->add_option("--target", ia.target, "Frame-0 target cloud")->required();
  init->add_option("--out", ia.out)->required();
  init->add_option("--trace", ia.trace, "Energy trace CSV");

  TrackArgs ta;
  auto* track = app.add_subcommand("track", "Per-frame motion tracking");
  track->add_option("--canonical", ta.canonical)->required();
  track->add_option("--targets", ta.targets, "Target clouds, in frame order")->required();
  track->add_option("--out-dir", ta.out_dir)->required();
  track->add_option("--first-frame", ta.first_frame);

  WarpArgs wa;
  auto* warp = app.add_subcommand("warp", "Warp appearance kernels with tracked motion");
  warp->add_option("--appearance", wa.appearance)->required();
  warp->add_option("--canonical", wa.canonical, "Canonical motion GSET")->required();
  warp->add_option("--frames", wa.frames, "Tracked motion GSETs")->required();
  warp->add_option("--out-dir", wa.out_dir)->required();

  MapArgs ma;
  auto* map = app.add_subcommand("map", "Morton mapping and attribute maps of a set");
  map->add_option("--set", ma.set)->required();
  map->add_option("--canonical", ma.canonical, "Set whose positions define the mapping (default: --set)");
  map->add_option("--out-dir", ma.out_dir)->required();
  map->add_option("--precision", ma.precision, "32 or 64 bit GMAP payload");

  RegressArgs ra;
  auto* regress = app.add_subcommand("regress", "Baseline attribute regression from a position map");
  regress->add_option("--appearance", ra.appearance, "Canonical appearance GSET")->required();
  regress->add_option("--canonical", ra.canonical, "Canonical motion GSET")->required();
  regress->add_option("--motion", ra.motion, "Motion GSET of the frame")->required();
  regress->add_option("--mapping", ra.mapping)->required();
  regress->add_option("--position", ra.position, "Position GMAP")->required();
  regress->add_option("--out-dir", ra.out_dir)->required();
  regress->add_option("--precision", ra.precision);

  AlignArgs aa;
  auto* align = app.add_subcommand("align", "Semantic and silhouette alignment to a driver");
  align->add_option("--source", aa.source, "Source canonical appearance GSET")->required();
  align->add_option("--source-labels", aa.source_labels, "Label CSV for the source");
  align->add_option("--reference", aa.reference, "ARAP reference (default: --source)");
  align->add_option("--driver", aa.driver, "Driver canonical motion GSET")->required();
  align->add_option("--driver-labels", aa.driver_labels, "Label CSV for the driver");
  align->add_option("--out", aa.out)->required();
  align->add_option("--trace", aa.trace);

  TransferArgs xa;
  auto* transfer = app.add_subcommand("transfer", "Transfer driver motion to the aligned source");
  transfer->add_option("--aligned", xa.aligned)->required();
  transfer->add_option("--source", xa.source, "Source canonical appearance GSET")->required();
  transfer->add_option("--driver-canonical", xa.driver_canonical)->required();
  transfer->add_option("--driver-frames", xa.driver_frames)->required();
  transfer->add_option("--out-dir", xa.out_dir)->required();

  RenderArgs rda;
  auto* render = app.add_subcommand("render", "Render a set to PPM and PGM");
  render->add_option("--set", rda.set)->required();
  render->add_option("--view", rda.view, "+x -x +y -y +z -z");
  render->add_option("--resolution", rda.resolution)->check(CLI::PositiveNumber);
  render->add_option("--margin", rda.margin);
  render->add_option("--out-prefix", rda.out_prefix)->required();

  LocalityArgs la;
  auto* locality = app.add_subcommand("locality", "Morton vs y-sort vs random locality scores");
  locality->add_option("--count", la.count);
  locality->add_option("--width", la.width);
  locality->add_option("--height", la.height);
  locality->add_option("--bits", la.bits);
  locality->add_option("--out", la.out, "CSV path (default: stdout)");

  GradcheckArgs ga;
  auto* gradcheck = app.add_subcommand("gradcheck", "Finite-difference check of every energy gradient");
  gradcheck->add_option("--instances", ga.instances);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    set_thread_count(g.threads);
    if (*synth) run_synth(sa, g);
    else if (*init) run_init(ia, g);
    else if (*track) run_track(ta, g);
    else if (*warp) run_warp(wa, g);
    else if (*map) run_map(ma, g);
    else if (*regress) run_regress(ra, g);
    else if (*align) run_align(aa, g);
    else if (*transfer) run_transfer(xa, g);
    else if (*render) run_render(rda, g);
    else if (*locality) run_locality(la, g);
    else if (*gradcheck) return run_gradcheck_cmd(ga, g);
  } catch (const std::exception& e) {
    std::cerr << "gsm: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
