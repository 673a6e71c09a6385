#pragma once

#include "gsm/warp/warp.hpp"

namespace gsm {

/// Maps a position map to rotation/shape/color attribute maps on the same mapping. Learned
/// regressors plug in here; outputs must share the input resolution and validity.
class AttributeRegressor {
 public:
  virtual ~AttributeRegressor() = default;
  virtual AttributeMaps regress(const AttributeMap& position_map, const MortonMapping& mapping) const = 0;
};

/// Deterministic regressor: returns the warm-up target itself, i.e. the pseudo-ground-truth
/// attributes of the warped canonical scene. The position map is only shape-checked.
AttributeMaps baseline_regress(const AttributeMap& position_map, const MortonMapping& mapping,
                               const GaussianSet& canonical, const FrameMotion& frame_motion,
                               const NeighborGraph& graph);

class BaselineRegressor final : public AttributeRegressor {
 public:
  BaselineRegressor(GaussianSet canonical, FrameMotion frame_motion, NeighborGraph graph)
      : canonical_(std::move(canonical)), motion_(std::move(frame_motion)), graph_(std::move(graph)) {}

  AttributeMaps regress(const AttributeMap& position_map, const MortonMapping& mapping) const override {
    return baseline_regress(position_map, mapping, canonical_, motion_, graph_);
  }

 private:
  GaussianSet canonical_;
  FrameMotion motion_;
  NeighborGraph graph_;
};

}  // namespace gsm
