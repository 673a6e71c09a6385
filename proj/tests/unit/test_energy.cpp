#include "doctest.h"

#include "gsm/core/error.hpp"
#include "gsm/energy/energy.hpp"
#include "gsm/energy/mask.hpp"
#include "gsm/render/camera.hpp"
#include "gsm/render/splat.hpp"
#include "support/fd.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace gsm;
using gsm::testing::FieldSelection;
using gsm::testing::gradient_error;
using gsm::testing::uniform;

namespace {

GaussianSet perturbed(const GaussianSet& set, std::mt19937_64& rng, double dp, double dq) {
  GaussianSet out = set;
  for (auto& k : out.kernels) {
    k.position += Vec3(uniform(rng, -dp, dp), uniform(rng, -dp, dp), uniform(rng, -dp, dp));
    k.rotation = Quat{k.rotation.w + uniform(rng, -dq, dq), k.rotation.x + uniform(rng, -dq, dq),
                      k.rotation.y + uniform(rng, -dq, dq), k.rotation.z + uniform(rng, -dq, dq)};
  }
  return out;
}

GaussianKernel kernel_at(const Vec3& p, std::vector<double> color = {0.5, 0.5, 0.5}) {
  GaussianKernel k;
  k.position = p;
  k.color = std::move(color);
  return k;
}

std::vector<OrthoCamera> test_cameras(int res) {
  return default_axis_cameras(Box{Vec3(-0.12, -0.12, -0.12), Vec3(0.12, 0.12, 0.12)}, res, 0.1);
}

}  // namespace

TEST_CASE("arap values") {
  std::mt19937_64 rng(1);
  GaussianSet prev = gsm::testing::random_set(rng, 20, 0.1, -4, -3);
  const NeighborGraph g = build_arap_graph(prev.positions(), 4, 0.1);
  const EnergyEval same = e_arap(prev, prev, g);
  CHECK(same.value == doctest::Approx(0.0).scale(1.0));
  for (const auto& v : same.grad_p) CHECK(v.norm() < 1e-14);

  const Quat r = Quat::from_axis_angle(Vec3(1, -1, 2), 0.8);
  GaussianSet cur = prev;
  for (auto& k : cur.kernels) {
    k.position = rotate(r, k.position) + Vec3(0.3, 0.1, 0);
    k.rotation = r * k.rotation;
  }
  CHECK(e_arap(prev, cur, g).value < 1e-20);

  // Invariance under a global rigid transform applied to both frames.
  GaussianSet cur2 = perturbed(prev, rng, 0.01, 0.05);
  const double base = e_arap(prev, cur2, g).value;
  GaussianSet prev_t = prev, cur_t = cur2;
  for (auto* s : {&prev_t, &cur_t})
    for (auto& k : s->kernels) {
      k.position = rotate(r, k.position) + Vec3(-1, 2, 0.5);
      k.rotation = r * k.rotation;
    }
  CHECK(e_arap(prev_t, cur_t, g).value == doctest::Approx(base).epsilon(1e-9));
}

TEST_CASE("arap gradient") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 5; ++trial) {
    const GaussianSet prev = gsm::testing::random_set(rng, 20, 0.1, -4, -3);
    const NeighborGraph g = build_arap_graph(prev.positions(), 4, 0.1);
    const GaussianSet cur = perturbed(prev, rng, 0.02, 0.2);
    const EnergyEval e = e_arap(prev, cur, g);
    CHECK(gradient_error(cur, [&](const GaussianSet& s) { return e_arap(prev, s, g).value; }, e, FieldSelection{}) < 1e-4);
  }
}

TEST_CASE("isotropy and size terms") {
  GaussianSet iso;
  iso.kernels.push_back(kernel_at(Vec3::Zero()));
  iso.kernels[0].log_scale = Vec3::Constant(-3.0);
  CHECK(e_iso(iso).value == 0.0);

  GaussianSet one;
  one.kernels.push_back(kernel_at(Vec3::Zero()));
  one.kernels[0].log_scale = Vec3(std::log(8.0) - 2.0, -2.0, -1.9);
  CHECK(e_iso(one, 4.0).value == doctest::Approx(4.0).epsilon(1e-12));

  // Two kernels, scales 1 and 9 (all axes): mean 5, alpha 1 -> ReLU(9 - 5) on three axes.
  GaussianSet two;
  two.kernels.push_back(kernel_at(Vec3::Zero()));
  two.kernels.push_back(kernel_at(Vec3::Ones()));
  two.kernels[1].log_scale = Vec3::Constant(std::log(9.0));
  CHECK(e_size(two, 1.0).value == doctest::Approx(12.0).epsilon(1e-12));
  CHECK(e_size(two, 2.0).value == 0.0);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const GaussianSet s = gsm::testing::random_set(rng, 25, 0.1, -5, -2);
    FieldSelection f{false, false, true, false, false};
    CHECK(gradient_error(s, [](const GaussianSet& x) { return e_iso(x, 4.0).value; }, e_iso(s, 4.0), f) < 1e-4);
    // The mean scale is a stop-gradient constant, so the oracle freezes it at the evaluation point.
    double mean = 0.0;
    for (const auto& k : s.kernels) mean += k.scale().sum();
    const double threshold = 1.5 * mean / static_cast<double>(3 * s.size());
    auto frozen = [threshold](const GaussianSet& x) {
      double v = 0.0;
      for (const auto& k : x.kernels)
        for (int a = 0; a < 3; ++a) v += std::max(0.0, std::exp(k.log_scale[a]) - threshold);
      return v;
    };
    CHECK(frozen(s) == doctest::Approx(e_size(s, 1.5).value).epsilon(1e-12));
    CHECK(gradient_error(s, frozen, e_size(s, 1.5), f) < 1e-4);
  }
}

TEST_CASE("colored point data term") {
  GaussianSet on;
  on.kernels.push_back(kernel_at(Vec3(0.1, 0.2, 0.3), {0.2, 0.4, 0.6}));
  ColoredCloud target{{Vec3(0.1, 0.2, 0.3)}, {{0.2, 0.4, 0.6}}};
  CHECK(e_data_points(on, target).value == 0.0);

  const double d = 0.03;
  GaussianSet off = on;
  off.kernels[0].position.x() += d;
  CHECK(e_data_points(off, target).value == doctest::Approx(2 * d * d).epsilon(1e-12));
  CHECK_THROWS_AS(e_data_points(off, ColoredCloud{}), InvalidArgument);

  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 5; ++trial) {
    const GaussianSet s = gsm::testing::random_set(rng, 30, 0.1, -4, -3);
    ColoredCloud cloud;
    for (int j = 0; j < 50; ++j) {
      cloud.points.emplace_back(uniform(rng, -0.1, 0.1), uniform(rng, -0.1, 0.1), uniform(rng, -0.1, 0.1));
      cloud.colors.push_back({uniform(rng, 0, 1), uniform(rng, 0, 1), uniform(rng, 0, 1)});
    }
    const DataTarget t(cloud);
    FieldSelection f{true, false, false, false, true};
    CHECK(gradient_error(s, [&](const GaussianSet& x) { return e_data_points(x, t).value; }, e_data_points(s, t), f) <
          1e-4);
  }
}

TEST_CASE("semantic centroid term") {
  GaussianSet s;
  s.kernels.push_back(kernel_at(Vec3(0, 0, 0)));
  s.kernels.push_back(kernel_at(Vec3(0, 1, 0)));
  SemanticClusters c;
  c.members = {{0, 1}};
  c.labels = {0};
  c.target_centroids = {Vec3(0, 0.5, 0)};
  CHECK(e_sem(s, c).value == 0.0);

  const double eps = 0.01;
  c.target_centroids = {Vec3(-eps, 0.5, 0)};
  const EnergyEval e = e_sem(s, c);
  CHECK(e.value == doctest::Approx(eps * eps).epsilon(1e-12));
  CHECK((e.grad_p[0] - Vec3(eps, 0, 0)).norm() < 1e-15);
  CHECK((e.grad_p[1] - Vec3(eps, 0, 0)).norm() < 1e-15);

  // Targets are constants: moving them leaves which kernels receive gradient unchanged.
  c.target_centroids = {Vec3(3, 2, 1)};
  const EnergyEval moved = e_sem(s, c);
  CHECK(moved.grad_p[0] == moved.grad_p[1]);

  c.members.push_back({});
  c.labels.push_back(1);
  c.target_centroids.push_back(Vec3::Zero());
  CHECK_THROWS_AS(e_sem(s, c), RuntimeError);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const GaussianSet r = gsm::testing::random_set(rng, 30, 0.1, -4, -3);
    SemanticClusters rc;
    for (int k = 0; k < 3; ++k) {
      rc.members.emplace_back();
      for (std::size_t i = static_cast<std::size_t>(k); i < 30; i += 3) rc.members.back().push_back(i);
      rc.target_centroids.emplace_back(uniform(rng, -0.1, 0.1), uniform(rng, -0.1, 0.1), 0);
      rc.labels.push_back(k);
    }
    CHECK(gradient_error(r, [&](const GaussianSet& x) { return e_sem(x, rc).value; }, e_sem(r, rc), FieldSelection{}) <
          1e-4);
  }
}

TEST_CASE("gaussian set l2") {
  GaussianSet a;
  a.kernels.push_back(kernel_at(Vec3(0.1, 0, 0)));
  GaussianSet b;
  b.kernels.push_back(kernel_at(Vec3::Zero()));
  CHECK(e_l2_gauss(a, a).value == 0.0);
  CHECK(e_l2_gauss(a, b, L2Terms{true, false}).value == doctest::Approx(0.01).epsilon(1e-12));

  GaussianSet flipped = b;
  flipped.kernels[0].rotation = -Quat::from_axis_angle(Vec3(1, 2, 3), 0.4);
  b.kernels[0].rotation = Quat::from_axis_angle(Vec3(1, 2, 3), 0.4);
  CHECK(e_l2_gauss(flipped, b, L2Terms{false, true}).value < 1e-30);
  CHECK_THROWS_AS(e_l2_gauss(a, GaussianSet{}), InvalidArgument);

  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 5; ++trial) {
    const GaussianSet x = gsm::testing::random_set(rng, 20, 0.1, -4, -3);
    const GaussianSet y = perturbed(x, rng, 0.02, 0.3);
    CHECK(gradient_error(x, [&](const GaussianSet& s) { return e_l2_gauss(s, y).value; }, e_l2_gauss(x, y),
                         FieldSelection{}) < 1e-4);
  }
}

TEST_CASE("mask term") {
  std::mt19937_64 rng(7);
  const auto cams = test_cameras(32);
  const GaussianSet s = gsm::testing::random_set(rng, 10, 0.07, -3.6, -2.8);
  std::vector<AlphaImage> own;
  for (const auto& c : cams) own.push_back(splat(s, c).alpha_image());
  CHECK(e_mask(s, own, cams).value == 0.0);

  double total = 0.0;
  for (const auto& img : own)
    for (double a : img.alpha) total += a;
  CHECK(e_mask(GaussianSet{}, own, cams).value == doctest::Approx(total).epsilon(1e-12));

  std::vector<AlphaImage> wrong_size{AlphaImage{8, 8, std::vector<double>(64, 0.0)}};
  CHECK_THROWS_AS(e_mask(s, wrong_size, {cams[0]}), InvalidArgument);

  for (int trial = 0; trial < 5; ++trial) {
    const GaussianSet x = gsm::testing::random_set(rng, 10, 0.07, -3.6, -2.8);
    const GaussianSet target = perturbed(x, rng, 0.03, 0.3);
    std::vector<AlphaImage> masks;
    for (const auto& c : cams) masks.push_back(splat(target, c).alpha_image());
    FieldSelection f{true, true, true, true, false};
    CHECK(gradient_error(x, [&](const GaussianSet& g) { return e_mask(g, masks, cams).value; }, e_mask(x, masks, cams),
                         f) < 1e-3);
  }
}
