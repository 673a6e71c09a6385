#include "doctest.h"

#include "gsm/core/error.hpp"
#include "gsm/core/metrics.hpp"
#include "gsm/synth/scene.hpp"
#include "gsm/warp/regressor.hpp"
#include "gsm/warp/warp.hpp"
#include "support/fd.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace gsm;

namespace {

GaussianSet rigidly_moved(const GaussianSet& set, const Quat& r, const Vec3& t) {
  GaussianSet out = set;
  for (auto& k : out.kernels) {
    k.position = rotate(r, k.position) + t;
    k.rotation = r * k.rotation;
  }
  return out;
}

GaussianSet unit_random_set(std::mt19937_64& rng, std::size_t n, Role role) {
  GaussianSet s = gsm::testing::random_set(rng, n, 0.2, -4.0, -3.0);
  for (auto& k : s.kernels) k.rotation = normalize(k.rotation);
  s.role = role;
  return s;
}

}  // namespace

TEST_CASE("relative motion") {
  std::mt19937_64 rng(1);
  const GaussianSet canon = unit_random_set(rng, 40, Role::Motion);
  const FrameMotion id = relative_motion(canon, canon);
  for (std::size_t i = 0; i < id.size(); ++i) {
    CHECK(rotation_angle_between(id.delta_q[i], Quat::identity()) < 1e-7);
    CHECK(id.delta_p[i].norm() < 1e-15);
  }

  const Quat r0 = Quat::from_axis_angle(Vec3(0.2, 1, -0.4), 0.9);
  const Vec3 t0(0.1, -0.3, 0.05);
  const GaussianSet moved = rigidly_moved(canon, r0, t0);
  const FrameMotion fm = relative_motion(canon, moved);
  for (std::size_t i = 0; i < fm.size(); ++i) {
    CHECK(rotation_angle_between(fm.delta_q[i], r0) < 1e-7);
    CHECK((fm.delta_p[i] - t0).norm() < 1e-12);
    CHECK((rotate(fm.delta_q[i], canon.kernels[i].position) + fm.delta_p[i] - moved.kernels[i].position).norm() < 1e-12);
  }
}

TEST_CASE("warp under identity and rigid motion") {
  std::mt19937_64 rng(2);
  const GaussianSet motion = unit_random_set(rng, 60, Role::Motion);
  const GaussianSet app = unit_random_set(rng, 300, Role::Appearance);
  const NeighborGraph g = build_skinning_graph(app.positions(), motion.positions(), 4, 0.1);

  const GaussianSet same = warp_appearance(app, FrameMotion::identity(motion.size()), g);
  for (std::size_t i = 0; i < app.size(); ++i) {
    CHECK((same.kernels[i].position - app.kernels[i].position).norm() < 1e-12);
    CHECK(same.kernels[i].log_scale == app.kernels[i].log_scale);
    CHECK(same.kernels[i].color == app.kernels[i].color);
  }

  const Quat r0 = Quat::from_axis_angle(Vec3(1, 0, 1), -0.6);
  const Vec3 t0(0.4, 0.1, -0.2);
  const FrameMotion fm = relative_motion(motion, rigidly_moved(motion, r0, t0));
  const GaussianSet warped = warp_appearance(app, fm, g);
  for (std::size_t i = 0; i < app.size(); ++i) {
    CHECK((warped.kernels[i].position - (rotate(r0, app.kernels[i].position) + t0)).norm() < 1e-9);
    CHECK(rotation_angle_between(warped.kernels[i].rotation, r0 * app.kernels[i].rotation) < 1e-7);
  }
}

TEST_CASE("warp of the two-link bend follows the analytic surface") {
  const SyntheticScene scene = make_scene(SceneKind::TwoLink, {}, {2000, 5000}, 4);
  const GaussianSet motion = make_motion_set(scene, std::log(0.02));
  const GaussianSet app = make_appearance_set(scene, std::log(0.008));
  FrameParams fp;
  fp.articulation = std::numbers::pi / 4;
  const GaussianSet moved = deform_set(scene, motion, fp, 1);
  const NeighborGraph g = build_skinning_graph(app.positions(), motion.positions(), 4, 0.02);
  const GaussianSet warped = warp_appearance(app, relative_motion(motion, moved), g);
  const AnimatedSequence seq = animate(scene, {FrameParams{}, fp});
  CHECK(chamfer_distance(warped.positions(), seq.frames[1].points) < 1e-3);
}

TEST_CASE("attribute maps round trip") {
  std::mt19937_64 rng(3);
  const GaussianSet motion = unit_random_set(rng, 50, Role::Motion);
  GaussianSet app = unit_random_set(rng, 500, Role::Appearance);
  const MortonMapping mapping = build_mapping(app.positions(), Resolution{32, 32});
  const NeighborGraph g = build_skinning_graph(app.positions(), motion.positions(), 4, 0.1);
  const Quat r0 = Quat::from_axis_angle(Vec3(0, 0, 1), 0.3);
  const FrameMotion fm = relative_motion(motion, rigidly_moved(motion, r0, Vec3(0.1, 0, 0)));
  const GaussianSet warped = warp_appearance(app, fm, g);

  const AttributeMaps attrs = pseudo_gt_attributes(warped, mapping);
  CHECK(attrs.rotation.channels == 4);
  CHECK(attrs.shape.channels == 4);
  for (std::size_t i = 0; i < warped.size(); ++i) {
    const double* q = attrs.rotation.pixel(mapping.pixel_index(i));
    CHECK(std::abs(std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]) - 1.0) < 1e-12);
  }
  for (int v = 0; v < 32; ++v)
    for (int u = 0; u < 32; ++u)
      if (mapping.owner(u, v) < 0) {
        const std::size_t px = static_cast<std::size_t>(v) * 32 + static_cast<std::size_t>(u);
        for (int c = 0; c < 4; ++c) CHECK(attrs.rotation.pixel(px)[c] == 0.0);
      }

  const GaussianMaps maps = disassemble(warped, mapping);
  const GaussianSet back = assemble(maps, mapping, Role::Appearance, warped.frame);
  for (std::size_t i = 0; i < warped.size(); ++i) {
    CHECK(back.kernels[i].position == warped.kernels[i].position);
    CHECK(back.kernels[i].rotation == warped.kernels[i].rotation);
    CHECK(back.kernels[i].log_scale == warped.kernels[i].log_scale);
    CHECK(back.kernels[i].opacity == warped.kernels[i].opacity);
    CHECK(back.kernels[i].color == warped.kernels[i].color);
  }

  // The deterministic regressor is the warm-up target itself.
  const AttributeMaps regressed = baseline_regress(maps.position, mapping, app, fm, g);
  CHECK(regressed.rotation == attrs.rotation);
  CHECK(regressed.shape == attrs.shape);
  CHECK(regressed.color == attrs.color);
  CHECK(pretrain_l2_loss(regressed, attrs, mapping) == 0.0);

  app.role = Role::Motion;
  CHECK_THROWS_AS(pseudo_gt_attributes(app, mapping), InvalidArgument);
}
