#include "doctest.h"

#include "gsm/core/error.hpp"
#include "gsm/render/camera.hpp"
#include "gsm/render/splat.hpp"
#include "support/fd.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace gsm;

namespace {

OrthoCamera cam_z(int res = 32, double width = 0.2) {
  return OrthoCamera::axis_view(ViewAxis::PosZ, Vec3::Zero(), width, width, res, res);
}

GaussianKernel blob(const Vec3& p, double sigma, double opacity) {
  GaussianKernel k;
  k.position = p;
  k.log_scale = Vec3::Constant(std::log(sigma));
  k.opacity = opacity;
  k.color = {1.0, 0.5, 0.25};
  return k;
}

}  // namespace

TEST_CASE("camera parsing and validation") {
  CHECK(parse_view_axis("+x") == ViewAxis::PosX);
  CHECK(parse_view_axis("-z") == ViewAxis::NegZ);
  CHECK(view_axis_name(ViewAxis::NegY) == "-y");
  CHECK_THROWS_AS(parse_view_axis("x+"), InvalidArgument);
  CHECK_THROWS_AS(OrthoCamera::axis_view(ViewAxis::PosX, Vec3::Zero(), 0.0, 1.0, 4, 4), InvalidArgument);
  for (ViewAxis a : {ViewAxis::PosX, ViewAxis::NegX, ViewAxis::PosY, ViewAxis::NegY, ViewAxis::PosZ, ViewAxis::NegZ}) {
    const OrthoCamera c = OrthoCamera::axis_view(a, Vec3::Zero(), 1, 1, 4, 4);
    CHECK((c.rotation * c.rotation.transpose() - Mat3::Identity()).norm() < 1e-15);
    CHECK(c.rotation.determinant() == doctest::Approx(1.0));
  }
}

TEST_CASE("projection") {
  std::mt19937_64 rng(1);
  GaussianKernel iso = blob(Vec3(0.01, 0.02, 0.03), 0.01, 1.0);
  iso.rotation = gsm::testing::random_unit_quat(rng);
  for (ViewAxis a : {ViewAxis::PosX, ViewAxis::NegY, ViewAxis::PosZ}) {
    const Projection p = project(iso, OrthoCamera::axis_view(a, Vec3::Zero(), 1, 1, 8, 8));
    CHECK((p.cov - 1e-4 * Mat2::Identity()).norm() < 1e-18);
  }

  // Long axis along x, viewed down +x: the plane shows the y and z scales.
  GaussianKernel aniso = blob(Vec3(0.3, 0, 0), 1.0, 1.0);
  aniso.log_scale = Vec3(std::log(0.5), std::log(0.02), std::log(0.03));
  const OrthoCamera cx = OrthoCamera::axis_view(ViewAxis::PosX, Vec3::Zero(), 1, 1, 8, 8);
  const Projection px = project(aniso, cx);
  Mat2 expect;
  expect << 0.02 * 0.02, 0, 0, 0.03 * 0.03;
  CHECK((px.cov - expect).norm() < 1e-15);
  CHECK(px.depth == doctest::Approx(0.3));

  const OrthoCamera c = cam_z(32, 0.2);
  const Projection centered = project(blob(Vec3(0, 0, 0.7), 0.01, 1), c);
  const Vec2 pix = c.plane_to_pixel(centered.mean);
  CHECK(pix.x() == doctest::Approx(16.0));
  CHECK(pix.y() == doctest::Approx(16.0));
}

TEST_CASE("splat alpha") {
  const OrthoCamera c = cam_z(32, 0.2);
  const RenderOutput empty = splat(GaussianSet{}, c);
  CHECK(std::all_of(empty.alpha.begin(), empty.alpha.end(), [](double a) { return a == 0.0; }));

  GaussianSet one;
  one.kernels.push_back(blob(Vec3::Zero(), 0.01, 0.7));
  const RenderOutput r1 = splat(one, c);
  const std::size_t center = 16 * 32 + 16;
  CHECK(r1.alpha[center] == doctest::Approx(0.7).epsilon(1e-6));
  for (double a : r1.alpha) CHECK((a >= 0.0 && a <= 1.0));
  for (const auto& f : r1.footprints[0]) CHECK((f.contribution > 0.0 && f.contribution <= 1.0));

  GaussianSet two = one;
  two.kernels.push_back(one.kernels[0]);
  const RenderOutput r2 = splat(two, c);
  for (const auto& f : r1.footprints[0]) {
    const double g = f.contribution;
    CHECK(r2.alpha[f.pixel] == doctest::Approx(1.0 - (1.0 - g) * (1.0 - g)).epsilon(1e-12));
  }

  GaussianSet outside;
  outside.kernels.push_back(blob(Vec3(5, 5, 0), 0.01, 1.0));
  const RenderOutput ro = splat(outside, c);
  CHECK(std::all_of(ro.alpha.begin(), ro.alpha.end(), [](double a) { return a == 0.0; }));

  GaussianSet flat;
  flat.kernels.push_back(blob(Vec3::Zero(), 0.01, 0.5));
  flat.kernels[0].log_scale = Vec3(std::log(0.01), std::log(1e-12), std::log(0.01));
  const OrthoCamera side = OrthoCamera::axis_view(ViewAxis::PosX, Vec3::Zero(), 0.2, 0.2, 16, 16);
  CHECK(splat(flat, side).skipped == 1);
}

TEST_CASE("splat order invariance and monotonicity") {
  std::mt19937_64 rng(2);
  const OrthoCamera c = cam_z(24, 0.25);
  GaussianSet s = gsm::testing::random_set(rng, 40, 0.08, -4.0, -3.0);
  const RenderOutput base = splat(s, c);
  GaussianSet shuffled = s;
  std::reverse(shuffled.kernels.begin(), shuffled.kernels.end());
  const RenderOutput rev = splat(shuffled, c);
  CHECK(base.alpha == rev.alpha);
  CHECK(base.rgb == rev.rgb);

  GaussianSet more = s;
  more.kernels.push_back(blob(Vec3(0.02, -0.01, 0), 0.02, 0.8));
  const RenderOutput m = splat(more, c);
  for (std::size_t i = 0; i < m.alpha.size(); ++i) CHECK(m.alpha[i] >= base.alpha[i]);

  SplatOptions no_fp;
  no_fp.keep_footprints = false;
  const RenderOutput lean = splat(s, c, no_fp);
  CHECK(lean.alpha == base.alpha);
}

TEST_CASE("front to back color") {
  const OrthoCamera c = cam_z(16, 0.2);
  GaussianSet s;
  s.kernels.push_back(blob(Vec3(0, 0, 0.0), 0.02, 0.5));
  s.kernels.push_back(blob(Vec3(0, 0, 0.1), 0.02, 0.5));
  s.kernels[0].color = {1, 0, 0};
  s.kernels[1].color = {0, 0, 1};
  const RenderOutput r = splat(s, c);
  const std::size_t px = 8 * 16 + 8;
  // Smaller depth is nearer: the red kernel at z = 0 sits in front.
  CHECK(r.rgb[3 * px + 0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(r.rgb[3 * px + 2] == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(r.alpha[px] == doctest::Approx(0.75).epsilon(1e-9));
}
