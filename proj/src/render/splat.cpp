#include "gsm/render/splat.hpp"

#include "gsm/core/error.hpp"
#include "gsm/core/parallel.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gsm {

Projection project(const GaussianKernel& kernel, const OrthoCamera& cam) {
  const Mat3 r = to_matrix(kernel.rotation);
  const Vec3 s2 = (2.0 * kernel.log_scale).array().exp();
  const Mat3 cov3 = r * s2.asDiagonal() * r.transpose();
  const Mat3 cam_cov = cam.rotation * cov3 * cam.rotation.transpose();
  const Vec3 p = cam.rotation * kernel.position;
  return {p.head<2>(), cam_cov.topLeftCorner<2, 2>(), p.z()};
}

std::vector<Projection> project(const GaussianSet& set, const OrthoCamera& cam) {
  cam.check();
  std::vector<Projection> out(set.size());
  parallel_for(0, set.size(), [&](std::size_t i) { out[i] = project(set.kernels[i], cam); });
  return out;
}

double footprint_profile(double mahalanobis2, double opacity, double truncation_sigma) {
  const double cut = truncation_sigma * truncation_sigma;
  if (!(mahalanobis2 < cut)) return 0.0;
  const double floor = std::exp(-0.5 * cut);
  return opacity * (std::exp(-0.5 * mahalanobis2) - floor) / (1.0 - floor);
}

double footprint_profile_dm(double mahalanobis2, double opacity, double truncation_sigma) {
  const double cut = truncation_sigma * truncation_sigma;
  if (!(mahalanobis2 < cut)) return 0.0;
  const double floor = std::exp(-0.5 * cut);
  return -0.5 * opacity * std::exp(-0.5 * mahalanobis2) / (1.0 - floor);
}

namespace {

bool well_conditioned(const Mat2& cov) {
  const Eigen::SelfAdjointEigenSolver<Mat2> eig(cov, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues()(0), hi = eig.eigenvalues()(1);
  return lo > 0.0 && std::isfinite(hi) && hi / lo <= 1e12;
}

}  // namespace

RenderOutput splat(const GaussianSet& set, const OrthoCamera& cam, const SplatOptions& options) {
  cam.check();
  const int w = cam.image_width, h = cam.image_height;
  RenderOutput out;
  out.width = w;
  out.height = h;
  out.rgb.assign(cam.pixel_count() * 3, 0.0);
  out.alpha.assign(cam.pixel_count(), 0.0);
  out.footprints.assign(set.size(), {});

  const auto proj = project(set, cam);
  std::vector<char> skip(set.size(), 0);
  const double t = options.truncation_sigma;

  parallel_for(0, set.size(), [&](std::size_t i) {
    const Projection& pr = proj[i];
    if (!well_conditioned(pr.cov)) {
      skip[i] = 1;
      return;
    }
    const Mat2 inv = pr.cov.inverse();
    const double radius = t * std::sqrt(std::max(pr.cov(0, 0), pr.cov(1, 1)) + std::abs(pr.cov(0, 1)));
    const Vec2 lo = cam.plane_to_pixel({pr.mean.x() - radius, pr.mean.y() + radius});
    const Vec2 hi = cam.plane_to_pixel({pr.mean.x() + radius, pr.mean.y() - radius});
    const int u0 = std::max(0, static_cast<int>(std::floor(lo.x())));
    const int v0 = std::max(0, static_cast<int>(std::floor(lo.y())));
    const int u1 = std::min(w - 1, static_cast<int>(std::ceil(hi.x())));
    const int v1 = std::min(h - 1, static_cast<int>(std::ceil(hi.y())));
    auto& fp = out.footprints[i];
    for (int v = v0; v <= v1; ++v) {
      for (int u = u0; u <= u1; ++u) {
        const Vec2 d = cam.pixel_center(u, v) - pr.mean;
        const double g = footprint_profile(d.dot(inv * d), set.kernels[i].opacity, t);
        if (g > 0.0)
          fp.push_back({static_cast<std::uint32_t>(v * w + u), g});
      }
    }
  });

  std::vector<std::size_t> order(set.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return proj[a].depth < proj[b].depth || (proj[a].depth == proj[b].depth && a < b);
  });

  // Front-to-back: color += T g c, T *= (1 - g); alpha = 1 - T.
  std::vector<double> transmittance(cam.pixel_count(), 1.0);
  for (std::size_t i : order) {
    if (skip[i]) {
      ++out.skipped;
      continue;
    }
    const auto& color = set.kernels[i].color;
    double c[3];
    for (int ch = 0; ch < 3; ++ch) {
      const double raw = color.empty() ? 1.0 : color[std::min<std::size_t>(ch, color.size() - 1)];
      c[ch] = std::clamp(raw, 0.0, 1.0);
    }
    for (const auto& e : out.footprints[i]) {
      const double tg = transmittance[e.pixel] * e.contribution;
      for (int ch = 0; ch < 3; ++ch) out.rgb[3 * e.pixel + ch] += tg * c[ch];
      transmittance[e.pixel] *= 1.0 - e.contribution;
    }
  }
  for (std::size_t p = 0; p < transmittance.size(); ++p) out.alpha[p] = 1.0 - transmittance[p];
  if (!options.keep_footprints) out.footprints.clear();
  return out;
}

}  // namespace gsm
