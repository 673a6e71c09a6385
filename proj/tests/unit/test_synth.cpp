#include "doctest.h"

#include "gsm/core/error.hpp"
#include "gsm/synth/scene.hpp"

#include <cmath>
#include <numbers>
#include <set>

using namespace gsm;

TEST_CASE("scene containment and determinism") {
  SceneParams p;
  p.radius = 0.05;
  p.length = 0.5;
  for (SceneKind kind : {SceneKind::Cylinder, SceneKind::TwoLink}) {
    const SyntheticScene a = make_scene(kind, p, {500, 5000}, 42);
    REQUIRE(a.motion_samples.size() == 500);
    REQUIRE(a.surface_points.size() == 5000);
    for (std::size_t i = 0; i < a.surface_points.size(); ++i)
      CHECK(a.on_surface(a.surface_points[i], a.surface_labels[i], 1e-9));
    for (std::size_t i = 0; i < a.motion_samples.size(); ++i)
      CHECK(a.on_surface(a.motion_samples[i], a.motion_labels[i], 1e-9));
    const SyntheticScene b = make_scene(kind, p, {500, 5000}, 42);
    CHECK(a.surface_points == b.surface_points);
    CHECK(a.surface_colors == b.surface_colors);
    CHECK(a.motion_samples == b.motion_samples);
    const SyntheticScene c = make_scene(kind, p, {500, 5000}, 43);
    CHECK(a.surface_points != c.surface_points);
  }
  const SyntheticScene t = make_scene(SceneKind::TwoLink, p, {500, 5000}, 1);
  std::set<int> labels(t.surface_labels.begin(), t.surface_labels.end());
  CHECK(labels == std::set<int>{0, 1, 2});
  CHECK(t.label_names.size() == 3);

  SceneParams bad = p;
  bad.radius = -1;
  CHECK_THROWS_AS(make_scene(SceneKind::Cylinder, bad, {10, 10}, 0), InvalidArgument);
  CHECK_THROWS_AS(make_scene(SceneKind::Cylinder, p, {0, 10}, 0), InvalidArgument);
  CHECK(parse_scene_kind("twolink") == SceneKind::TwoLink);
  CHECK_THROWS_AS(parse_scene_kind("arm"), InvalidArgument);
}

TEST_CASE("two link animation") {
  const SyntheticScene s = make_scene(SceneKind::TwoLink, {}, {200, 2000}, 5);
  const AnimatedSequence still = animate(s, sweep_schedule(3, 0.0));
  for (const auto& f : still.frames) CHECK(f.points == s.surface_points);

  const double half_pi = std::numbers::pi / 2;
  FrameParams f;
  f.articulation = half_pi;
  const double L = s.params.length, D = s.params.distal_length;
  const Vec3 tip(L + D, s.params.distal_radius, 0.0);
  const Vec3 moved = s.deform(tip, 1, f);
  // Rotating (D, r, 0) about the joint by +90 degrees gives (-r, D, 0).
  CHECK(std::abs(moved.x() - (L - s.params.distal_radius)) < 1e-12);
  CHECK(std::abs(moved.y() - D) < 1e-12);
  CHECK(std::abs(moved.z()) < 1e-12);
  CHECK(s.deform(Vec3(0.2, 0.05, 0), 0, f) == Vec3(0.2, 0.05, 0));

  FrameParams too_far;
  too_far.articulation = 2.5;
  CHECK_THROWS_AS(animate(s, {too_far}), InvalidArgument);

  // Per-link rigidity and trajectory consistency.
  const auto schedule = sweep_schedule(5, 1.0);
  const AnimatedSequence seq = animate(s, schedule);
  for (std::size_t t = 0; t < schedule.size(); ++t) {
    for (std::size_t i = 0; i < 200; i += 7)
      CHECK(seq.frames[t].points[i] == s.deform(s.surface_points[i], s.surface_labels[i], schedule[t]));
    for (std::size_t i = 0; i + 1 < 400; ++i) {
      const std::size_t j = i + 1;
      if (s.surface_labels[i] != s.surface_labels[j]) continue;
      const double d0 = (s.surface_points[i] - s.surface_points[j]).norm();
      const double dt = (seq.frames[t].points[i] - seq.frames[t].points[j]).norm();
      CHECK(std::abs(d0 - dt) < 1e-12);
    }
  }
}

TEST_CASE("cylinder bend") {
  const SyntheticScene s = make_scene(SceneKind::Cylinder, {}, {100, 1000}, 9);
  const double L = s.params.length;
  FrameParams f;
  f.articulation = (std::numbers::pi / 2) / L;
  const Vec3 end = s.deform(Vec3(L, 0, 0), 2, f);
  const double R = 1.0 / f.articulation;
  CHECK(std::abs(end.x() - R) < 1e-12);
  CHECK(std::abs(end.y() - R) < 1e-12);
  CHECK(std::abs(end.z()) < 1e-12);
  CHECK(s.deform(Vec3(0, 0.01, 0.02), 0, f).isApprox(Vec3(0, 0.01, 0.02), 1e-12));

  FrameParams fold;
  fold.articulation = 30.0;
  CHECK_THROWS_AS(animate(s, {fold}), InvalidArgument);
}

TEST_CASE("rigid schedule and set deformation") {
  const SyntheticScene s = make_scene(SceneKind::TwoLink, {}, {50, 100}, 2);
  const auto sched = rigid_schedule(4, Vec3(0.01, 0, 0), Vec3(0, 0, 1), 0.1);
  REQUIRE(sched.size() == 4);
  CHECK(sched[0].global_translation == Vec3::Zero());
  CHECK(rotation_angle_between(sched[3].global_rotation, Quat::identity()) == doctest::Approx(0.3));

  const GaussianSet m = make_motion_set(s, std::log(0.02));
  CHECK(m.role == Role::Motion);
  const GaussianSet moved = deform_set(s, m, sched[2], 2);
  CHECK(moved.frame == 2);
  const AnimatedSequence seq = animate(s, sched);
  for (std::size_t i = 0; i < m.size(); ++i) {
    CHECK((moved.kernels[i].position - seq.motion_trajectories[2][i]).norm() < 1e-15);
    CHECK(rotation_angle_between(moved.kernels[i].rotation, seq.motion_rotations[2][i]) < 1e-7);
  }
  const GaussianSet a = make_appearance_set(s, std::log(0.01));
  CHECK(a.kernels[5].color == s.surface_colors[5]);
  CHECK(a.kernels[5].label == s.surface_labels[5]);
}
