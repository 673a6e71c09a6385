#include "gsm/energy/mask.hpp"

#include "gsm/core/error.hpp"
#include "gsm/core/parallel.hpp"

#include <cmath>
#include <string>

namespace gsm {

EnergyEval e_mask(const GaussianSet& set, const std::vector<AlphaImage>& target_masks,
                  const std::vector<OrthoCamera>& cameras, const SplatOptions& options) {
  if (target_masks.size() != cameras.size()) throw InvalidArgument("e_mask: one target mask per camera required");
  const std::size_t n = set.size();
  EnergyEval e = EnergyEval::zeros(n, set.color_channels());
  SplatOptions opts = options;
  opts.keep_footprints = true;

  for (std::size_t view = 0; view < cameras.size(); ++view) {
    const OrthoCamera& cam = cameras[view];
    const AlphaImage& target = target_masks[view];
    if (target.width != cam.image_width || target.height != cam.image_height ||
        target.alpha.size() != cam.pixel_count())
      throw InvalidArgument("e_mask: view " + std::to_string(view) + " mask is " + std::to_string(target.width) + "x" +
                            std::to_string(target.height) + ", camera renders " + std::to_string(cam.image_width) +
                            "x" + std::to_string(cam.image_height));

    const RenderOutput render = splat(set, cam, opts);
    const std::size_t pixels = cam.pixel_count();

    // Per pixel: product of nonzero (1 - g) factors and how many factors are exactly zero, so
    // prod_{j != i}(1 - g_j) is available even for fully opaque contributions.
    std::vector<double> prod_nonzero(pixels, 1.0);
    std::vector<int> zero_factors(pixels, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& fp : render.footprints[i]) {
        const double f = 1.0 - fp.contribution;
        if (f == 0.0) ++zero_factors[fp.pixel];
        else prod_nonzero[fp.pixel] *= f;
      }
    }
    std::vector<double> sign(pixels, 0.0);
    double value = 0.0;
    for (std::size_t p = 0; p < pixels; ++p) {
      const double diff = render.alpha[p] - target.alpha[p];
      value += std::abs(diff);
      sign[p] = diff > 0.0 ? 1.0 : (diff < 0.0 ? -1.0 : 0.0);
    }
    e.value += value;

    const auto projections = project(set, cam);
    const Eigen::Matrix<double, 2, 3> plane = cam.rotation.topRows<2>();
    parallel_for(0, n, [&](std::size_t i) {
      const auto& fps = render.footprints[i];
      if (fps.empty()) return;
      const auto& kernel = set.kernels[i];
      const Projection& pr = projections[i];
      const Mat2 inv = pr.cov.inverse();

      Vec2 grad_mean = Vec2::Zero();
      Mat2 grad_inv = Mat2::Zero();  // dE/d(Sigma^-1)
      double grad_opacity = 0.0;
      const double cut = options.truncation_sigma * options.truncation_sigma;
      const double floor = std::exp(-0.5 * cut);
      for (const auto& fp : fps) {
        if (sign[fp.pixel] == 0.0) continue;
        const double f = 1.0 - fp.contribution;
        double excl;
        if (f == 0.0) excl = zero_factors[fp.pixel] == 1 ? prod_nonzero[fp.pixel] : 0.0;
        else excl = zero_factors[fp.pixel] > 0 ? 0.0 : prod_nonzero[fp.pixel] / f;
        const double de_dg = sign[fp.pixel] * excl;  // dalpha/dg_i = prod_{j != i}(1 - g_j)

        const int u = static_cast<int>(fp.pixel % static_cast<std::uint32_t>(cam.image_width));
        const int v = static_cast<int>(fp.pixel / static_cast<std::uint32_t>(cam.image_width));
        const Vec2 d = cam.pixel_center(u, v) - pr.mean;
        const double m = d.dot(inv * d);
        const double de_dm = de_dg * footprint_profile_dm(m, kernel.opacity, options.truncation_sigma);
        grad_mean += de_dm * (-2.0 * (inv * d));
        grad_inv += de_dm * (d * d.transpose());
        grad_opacity += de_dg * (std::exp(-0.5 * m) - floor) / (1.0 - floor);
      }

      // Sigma2 = P Sigma3 P^T, Sigma3 = M M^T, M = R(q) diag(exp(s)).
      const Mat2 grad_cov2 = -inv * grad_inv * inv;
      const Mat3 grad_cov3 = plane.transpose() * grad_cov2 * plane;
      const Quat qn = normalize(kernel.rotation);
      const Mat3 r = unit_to_matrix(qn);
      const Vec3 scale = kernel.scale();
      const Mat3 mm = r * scale.asDiagonal();
      const Mat3 grad_m = (grad_cov3 + grad_cov3.transpose()) * mm;
      const Mat3 grad_r = grad_m * scale.asDiagonal();
      const auto jac = unit_to_matrix_jacobian(qn);
      Vec4 grad_qn;
      for (int c = 0; c < 4; ++c) grad_qn[c] = (grad_r.array() * jac[c].array()).sum();

      e.grad_p[i] += plane.transpose() * grad_mean;
      e.grad_q[i] += normalized_quat_grad(kernel.rotation, grad_qn);
      for (int a = 0; a < 3; ++a) e.grad_log_scale[i][a] += grad_m.col(a).dot(mm.col(a));
      e.grad_opacity[i] += grad_opacity;
    });
  }
  return e;
}

}  // namespace gsm
