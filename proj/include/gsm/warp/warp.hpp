#pragma once

#include "gsm/core/gaussian.hpp"
#include "gsm/core/neighbor_graph.hpp"
#include "gsm/morton/attribute_map.hpp"

#include <vector>

namespace gsm {

/// Per-motion-kernel transform of frame t relative to the canonical frame. Each transform maps its
/// own canonical kernel exactly onto the frame-t kernel: R(delta_q) p_c + delta_p = p_t.
struct FrameMotion {
  std::vector<Quat> delta_q;
  std::vector<Vec3> delta_p;
  int frame = 0;

  std::size_t size() const { return delta_q.size(); }
  static FrameMotion identity(std::size_t count, int frame = 0);
};

FrameMotion relative_motion(const GaussianSet& motion_canonical, const GaussianSet& motion_t);

/// Skins canonical appearance kernels with the blended neighbor transforms (position by weighted
/// transform average, rotation by quat_blend). Scale, opacity and color are copied.
/// `graph` must be the normalized appearance->motion graph built in the canonical frame.
GaussianSet warp_appearance(const GaussianSet& appearance_canonical, const FrameMotion& frame_motion,
                            const NeighborGraph& graph);

/// Attribute maps regressed from (or supervising) a position map.
struct AttributeMaps {
  AttributeMap rotation;  // 4 channels: w x y z
  AttributeMap shape;     // 4 channels: 3 log-scales, opacity
  AttributeMap color;     // color channels
};

/// Position map plus attribute maps: everything needed to reassemble a GaussianSet.
struct GaussianMaps {
  AttributeMap position;  // 3 channels
  AttributeMaps attributes;
};

AttributeMap position_map(const GaussianSet& set, const MortonMapping& mapping);
AttributeMaps pseudo_gt_attributes(const GaussianSet& warped, const MortonMapping& mapping);

GaussianMaps disassemble(const GaussianSet& set, const MortonMapping& mapping);

/// Rebuilds kernels from map pixels. Labels are not carried by maps; pass them per kernel
/// (-1 or an empty list means unlabeled).
GaussianSet assemble(const GaussianMaps& maps, const MortonMapping& mapping, Role role, int frame,
                     std::span<const int> labels = {});

/// Warm-up L2 between predicted and pseudo-ground-truth attribute maps: mean squared
/// difference over valid pixels and all channels of the three maps.
double pretrain_l2_loss(const AttributeMaps& predicted, const AttributeMaps& target, const MortonMapping& mapping);

}  // namespace gsm
