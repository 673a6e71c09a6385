#pragma once

#include "gsm/core/gaussian.hpp"
#include "gsm/energy/energy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

namespace gsm::testing {

struct FieldSelection {
  bool position = true;
  bool rotation = true;
  bool log_scale = false;
  bool opacity = false;
  bool color = false;
};

/// ||analytic - numeric||_inf / ||numeric||_inf over the selected fields. Each scalar uses the
/// central difference at whichever step in {h, h/10, h/100} has the closest forward and backward
/// differences, so a step that straddles a kink or a matching switch is not used.
inline double gradient_error(GaussianSet s, const std::function<double(const GaussianSet&)>& energy,
                             const EnergyEval& analytic, FieldSelection fields, double h = 1e-6) {
  double max_diff = 0.0, max_num = 0.0;
  const double f0 = energy(s);
  auto probe = [&](double& slot, double an) {
    const double keep = slot;
    double num = 0.0, best_gap = std::numeric_limits<double>::infinity();
    for (double step : {h, h / 10, h / 100}) {
      slot = keep + step;
      const double fp = energy(s);
      slot = keep - step;
      const double fm = energy(s);
      slot = keep;
      const double gap = std::abs((fp - f0) - (f0 - fm)) / step;
      if (gap < best_gap) best_gap = gap, num = (fp - fm) / (2.0 * step);
    }
    max_diff = std::max(max_diff, std::abs(num - an));
    max_num = std::max(max_num, std::abs(num));
  };
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto& k = s.kernels[i];
    if (fields.position)
      for (int a = 0; a < 3; ++a) probe(k.position[a], analytic.grad_p[i][a]);
    if (fields.rotation) {
      probe(k.rotation.w, analytic.grad_q[i][0]);
      probe(k.rotation.x, analytic.grad_q[i][1]);
      probe(k.rotation.y, analytic.grad_q[i][2]);
      probe(k.rotation.z, analytic.grad_q[i][3]);
    }
    if (fields.log_scale)
      for (int a = 0; a < 3; ++a) probe(k.log_scale[a], analytic.grad_log_scale[i][a]);
    if (fields.opacity) probe(k.opacity, analytic.grad_opacity[i]);
    if (fields.color)
      for (std::size_t c = 0; c < k.color.size(); ++c) probe(k.color[c], analytic.grad_color[i][c]);
  }
  return max_num > 0.0 ? max_diff / max_num : max_diff;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

inline Quat random_unit_quat(std::mt19937_64& rng) {
  Quat q{uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1)};
  return normalize(q);
}

/// Random kernels in a box of half-width `extent` with raw (unnormalized) rotations.
inline GaussianSet random_set(std::mt19937_64& rng, std::size_t n, double extent, double log_scale_lo,
                              double log_scale_hi, std::size_t channels = 3) {
  GaussianSet set;
  set.role = Role::Appearance;
  for (std::size_t i = 0; i < n; ++i) {
    GaussianKernel k;
    k.position = Vec3(uniform(rng, -extent, extent), uniform(rng, -extent, extent), uniform(rng, -extent, extent));
    const Quat u = random_unit_quat(rng);
    const double scale = uniform(rng, 0.7, 1.4);
    k.rotation = Quat{u.w * scale, u.x * scale, u.y * scale, u.z * scale};
    for (int a = 0; a < 3; ++a) k.log_scale[a] = uniform(rng, log_scale_lo, log_scale_hi);
    k.opacity = uniform(rng, 0.3, 0.9);
    for (std::size_t c = 0; c < channels; ++c) k.color.push_back(uniform(rng, 0, 1));
    set.kernels.push_back(std::move(k));
  }
  return set;
}

}  // namespace gsm::testing
