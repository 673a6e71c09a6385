#include "gsm/synth/scene.hpp"

#include "gsm/core/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace gsm {

namespace {

constexpr double kPi = std::numbers::pi;

enum Part { kProximalSide, kProximalCapStart, kProximalCapEnd, kDistalSide, kEffector, kPartCount };

// Portable [0,1) from a 64-bit engine (distribution objects are implementation-defined).
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

struct PartSpec {
  double area = 0.0;
  int label = 0;
};

std::array<PartSpec, kPartCount> part_specs(SceneKind kind, const SceneParams& p) {
  std::array<PartSpec, kPartCount> parts{};
  parts[kProximalSide] = {2.0 * kPi * p.radius * p.length, 0};
  parts[kProximalCapStart] = {kPi * p.radius * p.radius, 0};
  parts[kProximalCapEnd] = {kPi * p.radius * p.radius, 0};
  if (kind == SceneKind::TwoLink) {
    parts[kDistalSide] = {2.0 * kPi * p.distal_radius * p.distal_length, 1};
    parts[kEffector] = {4.0 * kPi * p.effector_radius * p.effector_radius, 2};
  }
  return parts;
}

int cylinder_label(double x_local, double length) {
  const int third = static_cast<int>(std::floor(3.0 * x_local / length));
  return std::clamp(third, 0, 2);
}

// Uniform sample on one part, in local coordinates (origin at 0, axis +x).
Vec3 sample_part(Part part, const SceneParams& p, std::mt19937_64& rng) {
  const double a = uniform01(rng), b = uniform01(rng);
  switch (part) {
    case kProximalSide: {
      const double phi = 2.0 * kPi * b;
      return {a * p.length, p.radius * std::cos(phi), p.radius * std::sin(phi)};
    }
    case kProximalCapStart:
    case kProximalCapEnd: {
      const double r = p.radius * std::sqrt(a), phi = 2.0 * kPi * b;
      return {part == kProximalCapStart ? 0.0 : p.length, r * std::cos(phi), r * std::sin(phi)};
    }
    case kDistalSide: {
      const double phi = 2.0 * kPi * b;
      return {p.length + a * p.distal_length, p.distal_radius * std::cos(phi), p.distal_radius * std::sin(phi)};
    }
    case kEffector: {
      const double z = 2.0 * a - 1.0, phi = 2.0 * kPi * b, rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      return Vec3(p.length + p.distal_length, 0.0, 0.0) +
             p.effector_radius * Vec3(rho * std::cos(phi), rho * std::sin(phi), z);
    }
    default: break;
  }
  return Vec3::Zero();
}

std::vector<double> colormap(const Vec3& local) {
  return {0.5 + 0.4 * std::sin(2.0 * kPi * local.x() / 0.35),
          0.5 + 0.4 * std::sin(2.0 * kPi * local.y() / 0.12 + 1.0),
          0.5 + 0.4 * std::cos(2.0 * kPi * local.z() / 0.12)};
}

void draw_samples(SceneKind kind, const SceneParams& params, std::size_t count, std::mt19937_64& rng,
                  PointList& points, std::vector<int>& labels) {
  const auto parts = part_specs(kind, params);
  double total = 0.0;
  for (const auto& s : parts) total += s.area;
  points.reserve(count);
  labels.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    double pick = uniform01(rng) * total;
    int part = 0;
    for (; part < kPartCount - 1; ++part) {
      if (pick < parts[part].area) break;
      pick -= parts[part].area;
    }
    while (parts[part].area == 0.0) --part;  // rounding at the top end
    const Vec3 local = sample_part(static_cast<Part>(part), params, rng);
    points.push_back(local + params.origin);
    labels.push_back(kind == SceneKind::Cylinder ? cylinder_label(local.x(), params.length) : parts[part].label);
  }
}

Mat3 rot_z(double angle) {
  Mat3 r;
  r << std::cos(angle), -std::sin(angle), 0, std::sin(angle), std::cos(angle), 0, 0, 0, 1;
  return r;
}

}  // namespace

SceneKind parse_scene_kind(std::string_view text) {
  if (text == "cylinder") return SceneKind::Cylinder;
  if (text == "twolink") return SceneKind::TwoLink;
  throw InvalidArgument("unknown scene kind '" + std::string(text) + "' (expected cylinder or twolink)");
}

std::string_view scene_kind_name(SceneKind kind) { return kind == SceneKind::Cylinder ? "cylinder" : "twolink"; }

SyntheticScene make_scene(SceneKind kind, const SceneParams& params, SampleCounts counts, std::uint64_t seed) {
  const auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(params.radius) || !positive(params.length) || !params.origin.allFinite())
    throw InvalidArgument("make_scene: radius and length must be positive and finite");
  if (kind == SceneKind::TwoLink &&
      (!positive(params.distal_radius) || !positive(params.distal_length) || !positive(params.effector_radius)))
    throw InvalidArgument("make_scene: distal and effector dimensions must be positive and finite");
  if (counts.motion < 1 || counts.appearance < 1) throw InvalidArgument("make_scene: sample counts must be at least 1");

  SyntheticScene scene;
  scene.kind = kind;
  scene.params = params;
  scene.seed = seed;
  scene.label_names = kind == SceneKind::Cylinder ? std::vector<std::string>{"base", "middle", "tip"}
                                                  : std::vector<std::string>{"proximal", "distal", "effector"};
  std::mt19937_64 rng(seed);
  draw_samples(kind, params, counts.motion, rng, scene.motion_samples, scene.motion_labels);
  draw_samples(kind, params, counts.appearance, rng, scene.surface_points, scene.surface_labels);
  scene.surface_colors.reserve(scene.surface_points.size());
  for (const Vec3& p : scene.surface_points) scene.surface_colors.push_back(colormap(p - params.origin));
  return scene;
}

void SyntheticScene::check_frame(const FrameParams& frame) const {
  if (!std::isfinite(frame.articulation) || !frame.global_translation.allFinite())
    throw InvalidArgument("animate: non-finite frame parameters");
  if (!(frame.global_rotation.norm() > 0.0)) throw InvalidArgument("animate: zero global rotation");
  if (kind == SceneKind::TwoLink && std::abs(frame.articulation) > 2.0)
    throw InvalidArgument("animate: joint angle " + std::to_string(frame.articulation) + " exceeds 2 rad");
  if (kind == SceneKind::Cylinder &&
      (std::abs(frame.articulation) * params.radius >= 1.0 || std::abs(frame.articulation) * params.length > kPi))
    throw InvalidArgument("animate: bend curvature " + std::to_string(frame.articulation) +
                          " makes the cylinder map non-injective");
}

Vec3 SyntheticScene::deform(const Vec3& p, int label, const FrameParams& frame) const {
  const Vec3 local = p - params.origin;
  Vec3 art = local;
  if (kind == SceneKind::TwoLink) {
    if (label >= 1) {
      const Vec3 joint(params.length, 0.0, 0.0);
      art = joint + rot_z(frame.articulation) * (local - joint);
    }
  } else if (frame.articulation != 0.0) {
    // Constant-curvature bend about +z: the x axis maps onto a circle of radius 1/kappa centered at (0, 1/kappa).
    const double kappa = frame.articulation;
    const double phi = kappa * local.x();
    const double radial = 1.0 / kappa - local.y();
    art = {radial * std::sin(phi), 1.0 / kappa - radial * std::cos(phi), local.z()};
  }
  return to_matrix(frame.global_rotation) * art + params.origin + frame.global_translation;
}

Quat SyntheticScene::deform_rotation(const Vec3& p, int label, const FrameParams& frame) const {
  double angle = 0.0;
  if (kind == SceneKind::TwoLink) angle = label >= 1 ? frame.articulation : 0.0;
  else angle = frame.articulation * (p - params.origin).x();
  const Quat art = angle == 0.0 ? Quat::identity() : Quat::from_axis_angle(Vec3::UnitZ(), angle);
  return normalize(normalize(frame.global_rotation) * art);
}

bool SyntheticScene::on_surface(const Vec3& p, int label, double tol) const {
  const Vec3 l = p - params.origin;
  const double rho = std::hypot(l.y(), l.z());
  const auto on_proximal = [&] {
    const bool side = std::abs(rho - params.radius) <= tol && l.x() >= -tol && l.x() <= params.length + tol;
    const bool cap = (std::abs(l.x()) <= tol || std::abs(l.x() - params.length) <= tol) && rho <= params.radius + tol;
    return side || cap;
  };
  if (kind == SceneKind::Cylinder) return on_proximal();
  switch (label) {
    case 0: return on_proximal();
    case 1:
      return std::abs(rho - params.distal_radius) <= tol && l.x() >= params.length - tol &&
             l.x() <= params.length + params.distal_length + tol;
    case 2:
      return std::abs((l - Vec3(params.length + params.distal_length, 0.0, 0.0)).norm() - params.effector_radius) <= tol;
    default: return false;
  }
}

AnimatedSequence animate(const SyntheticScene& scene, const std::vector<FrameParams>& schedule) {
  if (schedule.empty()) throw InvalidArgument("animate: empty schedule");
  for (const auto& f : schedule) scene.check_frame(f);
  AnimatedSequence seq;
  for (const auto& f : schedule) {
    ColoredCloud cloud;
    cloud.colors = scene.surface_colors;
    cloud.points.reserve(scene.surface_points.size());
    for (std::size_t i = 0; i < scene.surface_points.size(); ++i)
      cloud.points.push_back(scene.deform(scene.surface_points[i], scene.surface_labels[i], f));
    PointList motion;
    std::vector<Quat> rotations;
    for (std::size_t i = 0; i < scene.motion_samples.size(); ++i) {
      motion.push_back(scene.deform(scene.motion_samples[i], scene.motion_labels[i], f));
      rotations.push_back(scene.deform_rotation(scene.motion_samples[i], scene.motion_labels[i], f));
    }
    seq.surface_trajectories.push_back(cloud.points);
    seq.frames.push_back(std::move(cloud));
    seq.motion_trajectories.push_back(std::move(motion));
    seq.motion_rotations.push_back(std::move(rotations));
  }
  return seq;
}

std::vector<FrameParams> sweep_schedule(std::size_t frames, double final_value) {
  std::vector<FrameParams> out(frames);
  for (std::size_t t = 0; t < frames; ++t)
    out[t].articulation = frames > 1 ? final_value * static_cast<double>(t) / static_cast<double>(frames - 1) : 0.0;
  return out;
}

std::vector<FrameParams> rigid_schedule(std::size_t frames, const Vec3& translation_step, const Vec3& axis,
                                        double angle_step) {
  std::vector<FrameParams> out(frames);
  for (std::size_t t = 0; t < frames; ++t) {
    const double s = static_cast<double>(t);
    out[t].global_translation = s * translation_step;
    out[t].global_rotation = angle_step == 0.0 ? Quat::identity() : Quat::from_axis_angle(axis, s * angle_step);
  }
  return out;
}

GaussianSet make_appearance_set(const SyntheticScene& scene, double log_scale, double opacity) {
  GaussianSet set;
  set.role = Role::Appearance;
  set.frame = 0;
  set.kernels.resize(scene.surface_points.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    auto& k = set.kernels[i];
    k.position = scene.surface_points[i];
    k.log_scale = Vec3::Constant(log_scale);
    k.opacity = opacity;
    k.color = scene.surface_colors[i];
    k.label = scene.surface_labels[i];
  }
  return set;
}

GaussianSet make_motion_set(const SyntheticScene& scene, double log_scale, double opacity) {
  GaussianSet set;
  set.role = Role::Motion;
  set.frame = 0;
  set.kernels.resize(scene.motion_samples.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    auto& k = set.kernels[i];
    k.position = scene.motion_samples[i];
    k.log_scale = Vec3::Constant(log_scale);
    k.opacity = opacity;
    k.color = {0.5, 0.5, 0.5};
    k.label = scene.motion_labels[i];
  }
  return set;
}

GaussianSet deform_set(const SyntheticScene& scene, const GaussianSet& canonical, const FrameParams& frame,
                       int frame_index) {
  scene.check_frame(frame);
  GaussianSet out = canonical;
  out.frame = frame_index;
  for (auto& k : out.kernels) {
    const int label = k.label.value_or(0);
    const Vec3 p = k.position;
    k.position = scene.deform(p, label, frame);
    k.rotation = normalize(scene.deform_rotation(p, label, frame) * normalize(k.rotation));
  }
  return out;
}

}  // namespace gsm
