#include "gsm/energy/gradcheck.hpp"

#include "gsm/energy/energy.hpp"
#include "gsm/energy/mask.hpp"
#include "gsm/render/camera.hpp"
#include "gsm/render/splat.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

namespace gsm {

namespace {

struct Fields {
  bool position = true;
  bool rotation = true;
  bool log_scale = false;
  bool opacity = false;
  bool color = false;
};

using EnergyFn = std::function<double(const GaussianSet&)>;

// Central differences at whichever of {h, h/10, h/100} has the closest forward and backward
// differences, so kinks (L1 signs, ReLU, max/min) and nearest-neighbor switches are not straddled.
double relative_error(GaussianSet s, const EnergyFn& f, const EnergyEval& an, Fields fields, double h) {
  double diff = 0.0, scale = 0.0;
  const double f0 = f(s);
  auto probe = [&](double& slot, double analytic) {
    const double keep = slot;
    double num = 0.0, best_gap = std::numeric_limits<double>::infinity();
    for (double step : {h, h / 10, h / 100}) {
      slot = keep + step;
      const double fp = f(s);
      slot = keep - step;
      const double fm = f(s);
      slot = keep;
      const double gap = std::abs((fp - f0) - (f0 - fm)) / step;
      if (gap < best_gap) best_gap = gap, num = (fp - fm) / (2.0 * step);
    }
    diff = std::max(diff, std::abs(num - analytic));
    scale = std::max(scale, std::abs(num));
  };
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto& k = s.kernels[i];
    if (fields.position)
      for (int a = 0; a < 3; ++a) probe(k.position[a], an.grad_p[i][a]);
    if (fields.rotation) {
      probe(k.rotation.w, an.grad_q[i][0]);
      probe(k.rotation.x, an.grad_q[i][1]);
      probe(k.rotation.y, an.grad_q[i][2]);
      probe(k.rotation.z, an.grad_q[i][3]);
    }
    if (fields.log_scale)
      for (int a = 0; a < 3; ++a) probe(k.log_scale[a], an.grad_log_scale[i][a]);
    if (fields.opacity) probe(k.opacity, an.grad_opacity[i]);
    if (fields.color)
      for (std::size_t c = 0; c < k.color.size(); ++c) probe(k.color[c], an.grad_color[i][c]);
  }
  return scale > 0.0 ? diff / scale : diff;
}

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return lo + (hi - lo) * (static_cast<double>(rng_() >> 11) * 0x1.0p-53); }

  Vec3 point(double extent) { return {uniform(-extent, extent), uniform(-extent, extent), uniform(-extent, extent)}; }

  GaussianSet set(std::size_t n, double extent, double ls_lo, double ls_hi) {
    GaussianSet s;
    for (std::size_t i = 0; i < n; ++i) {
      GaussianKernel k;
      k.position = point(extent);
      const double m = uniform(0.7, 1.4);
      Quat q{uniform(-1, 1), uniform(-1, 1), uniform(-1, 1), uniform(-1, 1)};
      q = normalize(q);
      k.rotation = Quat{q.w * m, q.x * m, q.y * m, q.z * m};
      for (int a = 0; a < 3; ++a) k.log_scale[a] = uniform(ls_lo, ls_hi);
      k.opacity = uniform(0.3, 0.9);
      k.color = {uniform(0, 1), uniform(0, 1), uniform(0, 1)};
      s.kernels.push_back(std::move(k));
    }
    return s;
  }

  GaussianSet jitter(const GaussianSet& s, double dp, double dq) {
    GaussianSet out = s;
    for (auto& k : out.kernels) {
      k.position += point(dp);
      k.rotation = Quat{k.rotation.w + uniform(-dq, dq), k.rotation.x + uniform(-dq, dq),
                        k.rotation.y + uniform(-dq, dq), k.rotation.z + uniform(-dq, dq)};
    }
    return out;
  }

  std::size_t count(std::size_t lo, std::size_t hi) { return lo + static_cast<std::size_t>(rng_() % (hi - lo + 1)); }

 private:
  std::mt19937_64 rng_;
};

}  // namespace

std::vector<GradcheckResult> run_gradcheck(std::uint64_t seed, const GradcheckOptions& opt) {
  const std::size_t nmax = std::max<std::size_t>(opt.max_kernels, 4);
  std::vector<GradcheckResult> results = {{"e_arap", 0.0, 1e-4, 0}, {"e_iso", 0.0, 1e-4, 0}, {"e_size", 0.0, 1e-4, 0},
                                          {"e_data", 0.0, 1e-4, 0}, {"e_sem", 0.0, 1e-4, 0},  {"e_l2", 0.0, 1e-4, 0},
                                          {"e_mask", 0.0, 1e-3, 0}};
  auto record = [&](std::size_t slot, double err) {
    results[slot].max_relative_error = std::max(results[slot].max_relative_error, err);
    ++results[slot].instances;
  };
  const double h = opt.step;
  Sampler rng(seed);
  const auto cams = default_axis_cameras(Box{Vec3::Constant(-0.12), Vec3::Constant(0.12)}, opt.image_size, 0.1);

  for (std::size_t inst = 0; inst < opt.instances; ++inst) {
    const std::size_t n = rng.count(4, nmax);

    const GaussianSet prev = rng.set(n, 0.1, -4, -3);
    const NeighborGraph g = build_arap_graph(prev.positions(), std::min<std::size_t>(4, n - 1), 0.1);
    const GaussianSet cur = rng.jitter(prev, 0.02, 0.2);
    record(0, relative_error(cur, [&](const GaussianSet& s) { return e_arap(prev, s, g).value; }, e_arap(prev, cur, g),
                             {}, h));

    const GaussianSet shapes = rng.set(n, 0.1, -5, -2);
    const Fields ls{false, false, true, false, false};
    record(1, relative_error(shapes, [](const GaussianSet& s) { return e_iso(s, 4.0).value; }, e_iso(shapes, 4.0), ls,
                             h));
    double mean = 0.0;
    for (const auto& k : shapes.kernels) mean += k.scale().sum();
    const double threshold = 1.5 * mean / static_cast<double>(3 * n);
    const EnergyFn frozen_size = [threshold](const GaussianSet& s) {
      double v = 0.0;
      for (const auto& k : s.kernels)
        for (int a = 0; a < 3; ++a) v += std::max(0.0, std::exp(k.log_scale[a]) - threshold);
      return v;
    };
    record(2, relative_error(shapes, frozen_size, e_size(shapes, 1.5), ls, h));

    const GaussianSet pts = rng.set(n, 0.1, -4, -3);
    ColoredCloud cloud;
    for (std::size_t j = 0; j < 2 * n; ++j) {
      cloud.points.push_back(rng.point(0.1));
      cloud.colors.push_back({rng.uniform(0, 1), rng.uniform(0, 1), rng.uniform(0, 1)});
    }
    const DataTarget target(cloud);
    record(3, relative_error(pts, [&](const GaussianSet& s) { return e_data_points(s, target).value; },
                             e_data_points(pts, target), {true, false, false, false, true}, h));

    SemanticClusters clusters;
    for (std::size_t c = 0; c < 3; ++c) {
      clusters.members.emplace_back();
      for (std::size_t i = c; i < n; i += 3) clusters.members.back().push_back(i);
      clusters.target_centroids.push_back(rng.point(0.1));
      clusters.labels.push_back(static_cast<int>(c));
    }
    record(4, relative_error(pts, [&](const GaussianSet& s) { return e_sem(s, clusters).value; }, e_sem(pts, clusters),
                             {}, h));

    const GaussianSet other = rng.jitter(pts, 0.02, 0.3);
    record(5, relative_error(pts, [&](const GaussianSet& s) { return e_l2_gauss(s, other).value; },
                             e_l2_gauss(pts, other), {}, h));

    const GaussianSet blobs = rng.set(std::min<std::size_t>(n, 12), 0.07, -3.6, -2.8);
    const GaussianSet shifted = rng.jitter(blobs, 0.03, 0.3);
    std::vector<AlphaImage> masks;
    for (const auto& c : cams) masks.push_back(splat(shifted, c).alpha_image());
    record(6, relative_error(blobs, [&](const GaussianSet& s) { return e_mask(s, masks, cams).value; },
                             e_mask(blobs, masks, cams), {true, true, true, true, false}, h));
  }
  return results;
}

}  // namespace gsm
