#pragma once

#include "gsm/core/gaussian.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gsm {

enum class SceneKind { Cylinder, TwoLink };

SceneKind parse_scene_kind(std::string_view text);
std::string_view scene_kind_name(SceneKind kind);

/// Geometry in meters. The shape axis runs along +x starting at `origin`.
///   Cylinder: one capped cylinder (radius, length).
///   TwoLink:  proximal capped cylinder (radius, length), distal cylinder (distal_radius,
///             distal_length) hinged about +z at the joint, and a spherical end effector
///             (effector_radius) centered on the distal tip.
struct SceneParams {
  double radius = 0.05;
  double length = 0.5;
  double distal_radius = 0.05;
  double distal_length = 0.3;
  double effector_radius = 0.06;
  Vec3 origin = Vec3::Zero();
};

struct SampleCounts {
  std::size_t motion = 500;
  std::size_t appearance = 5000;
};

/// Per-frame deformation parameters. `articulation` is the joint angle (TwoLink, radians) or the
/// bend curvature (Cylinder, 1/m). The global rigid transform is applied after the articulation.
struct FrameParams {
  double articulation = 0.0;
  Quat global_rotation;
  Vec3 global_translation = Vec3::Zero();
};

struct SyntheticScene {
  SceneKind kind = SceneKind::TwoLink;
  SceneParams params;
  std::uint64_t seed = 0;
  std::vector<std::string> label_names;  // label id -> name

  PointList motion_samples;
  std::vector<int> motion_labels;
  PointList surface_points;
  std::vector<std::vector<double>> surface_colors;
  std::vector<int> surface_labels;

  /// Analytic deformation of a canonical point carrying `label`; returns its frame position
  /// and the local rotation of its neighborhood.
  Vec3 deform(const Vec3& p, int label, const FrameParams& frame) const;
  Quat deform_rotation(const Vec3& p, int label, const FrameParams& frame) const;
  /// Throws InvalidArgument for out-of-range joint angles or non-injective bends.
  void check_frame(const FrameParams& frame) const;
  /// Exact membership test on the analytic surface (distance within tol).
  bool on_surface(const Vec3& p, int label, double tol = 1e-9) const;
};

/// Uniform random samples on the shape surface (area-weighted across parts), colored by a
/// smooth function of canonical position. Deterministic in `seed`.
SyntheticScene make_scene(SceneKind kind, const SceneParams& params, SampleCounts counts, std::uint64_t seed);

struct AnimatedSequence {
  std::vector<ColoredCloud> frames;              // deformed surface samples with canonical colors
  std::vector<PointList> surface_trajectories;   // same positions, per frame
  std::vector<PointList> motion_trajectories;    // deformed motion samples
  std::vector<std::vector<Quat>> motion_rotations;
};

AnimatedSequence animate(const SyntheticScene& scene, const std::vector<FrameParams>& schedule);

/// Linear joint sweep 0 -> `final_angle` over `frames` frames (frame 0 = rest).
std::vector<FrameParams> sweep_schedule(std::size_t frames, double final_value);
/// Pure rigid motion: frame t applies t * (rotation step, translation step).
std::vector<FrameParams> rigid_schedule(std::size_t frames, const Vec3& translation_step, const Vec3& axis,
                                        double angle_step);

/// Canonical appearance Gaussians: one kernel per surface sample, isotropic log-scale.
GaussianSet make_appearance_set(const SyntheticScene& scene, double log_scale, double opacity = 0.9);
/// Initial motion Gaussians on the motion samples, gray, isotropic log-scale.
GaussianSet make_motion_set(const SyntheticScene& scene, double log_scale, double opacity = 0.9);
/// Ground-truth motion set of a frame: canonical motion kernels moved by the analytic deformation.
GaussianSet deform_set(const SyntheticScene& scene, const GaussianSet& canonical, const FrameParams& frame,
                       int frame_index);

}  // namespace gsm
