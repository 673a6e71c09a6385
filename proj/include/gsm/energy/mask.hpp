#pragma once

#include "gsm/energy/energy.hpp"
#include "gsm/render/splat.hpp"

#include <vector>

namespace gsm {

/// sum_views sum_pixels |alpha_rendered - alpha_target| with gradients through each kernel's
/// pixel footprint. Subgradient 0 where the two alphas are equal.
EnergyEval e_mask(const GaussianSet& set, const std::vector<AlphaImage>& target_masks,
                  const std::vector<OrthoCamera>& cameras, const SplatOptions& options = {});

}  // namespace gsm
